#include "lieprelim/expr.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <numeric>
#include <utility>

namespace lieprelim {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
  return mix(std::hash<std::string>{}(q.get_num().get_str()),
             std::hash<std::string>{}(q.get_den().get_str()));
}

}  // namespace

struct Build {
  static Expr make(Node n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 1000003u;
    switch (n.kind) {
      case Kind::Number:
        h = mix(h, hash_rational(n.num));
        break;
      case Kind::Symbol:
        h = mix(h, std::hash<std::string>{}(n.name));
        break;
      case Kind::Function:
        h = mix(h, std::hash<std::string>{}(n.name));
        for (const auto& p : n.params) h = mix(h, std::hash<std::string>{}(p));
        for (int d : n.derivs) h = mix(h, static_cast<std::size_t>(d));
        break;
      default:
        break;
    }
    for (const auto& op : n.ops) h = mix(h, op.hash());
    n.hash = h;
    return Expr(std::make_shared<const Node>(std::move(n)));
  }
  static Expr raw(Kind k, std::vector<Expr> ops) {
    Node n{k, {}, {}, {}, {}, std::move(ops), 0};
    return make(std::move(n));
  }
};

namespace {

Expr raw_pow(const Expr& b, const Expr& e) { return Build::raw(Kind::Power, {b, e}); }

const Expr& zero_expr() {
  static const Expr z = Expr::number(0);
  return z;
}

const Expr& one_expr() {
  static const Expr o = Expr::number(1);
  return o;
}

template <class T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(int v) : Expr(number(Rational(v))) {}
Expr::Expr(long v) : Expr(number(Rational(v))) {}
Expr::Expr(const Rational& v) : Expr(number(v)) {}

Expr Expr::number(const Rational& v) {
  Node n{Kind::Number, v, {}, {}, {}, {}, 0};
  n.num.canonicalize();
  return Build::make(std::move(n));
}

Expr Expr::symbol(std::string name) {
  Node n{Kind::Symbol, 0, std::move(name), {}, {}, {}, 0};
  return Build::make(std::move(n));
}

Expr Expr::function(std::string name, std::vector<std::string> params, std::vector<Expr> args,
                    std::vector<int> derivs) {
  if (args.size() != params.size()) throw Error("function " + name + ": argument count mismatch");
  if (derivs.empty()) derivs.assign(params.size(), 0);
  if (derivs.size() != params.size()) throw Error("function " + name + ": derivative arity mismatch");
  Node n{Kind::Function, 0, std::move(name), std::move(params), std::move(derivs), std::move(args), 0};
  return Build::make(std::move(n));
}

Expr Expr::function(std::string name, std::vector<std::string> params) {
  std::vector<Expr> args;
  args.reserve(params.size());
  for (const auto& p : params) args.push_back(symbol(p));
  return function(std::move(name), std::move(params), std::move(args));
}

Kind Expr::kind() const { return node_->kind; }
bool Expr::is_zero() const { return kind() == Kind::Number && node_->num == 0; }
bool Expr::is_one() const { return kind() == Kind::Number && node_->num == 1; }
bool Expr::is_integer() const { return kind() == Kind::Number && node_->num.get_den() == 1; }
const Rational& Expr::value() const { return node_->num; }
const std::string& Expr::name() const { return node_->name; }
std::span<const Expr> Expr::operands() const { return node_->ops; }
const std::vector<std::string>& Expr::params() const { return node_->params; }
const std::vector<int>& Expr::derivs() const { return node_->derivs; }
int Expr::derivative_order() const {
  return std::accumulate(node_->derivs.begin(), node_->derivs.end(), 0);
}
bool Expr::has_canonical_args() const {
  for (std::size_t i = 0; i < node_->params.size(); ++i) {
    const Expr& a = node_->ops[i];
    if (!a.is_symbol() || a.name() != node_->params[i]) return false;
  }
  return true;
}
Expr Expr::underived() const { return with_derivs(std::vector<int>(node_->params.size(), 0)); }
Expr Expr::with_derivs(std::vector<int> d) const {
  return function(node_->name, node_->params, node_->ops, std::move(d));
}
const Expr& Expr::base() const { return node_->ops[0]; }
const Expr& Expr::exponent() const { return node_->ops[1]; }
std::size_t Expr::hash() const { return node_->hash; }

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Number:
      return cmp(a.value(), b.value()) < 0 ? -1 : (cmp(a.value(), b.value()) > 0 ? 1 : 0);
    case Kind::Symbol:
      return cmp3(a.name(), b.name());
    case Kind::Function: {
      if (int c = cmp3(a.name(), b.name())) return c;
      if (int c = cmp3(a.params(), b.params())) return c;
      // lower derivative order first, then slot order
      if (int c = cmp3(a.derivative_order(), b.derivative_order())) return c;
      if (int c = cmp3(b.derivs(), a.derivs())) return c;
      break;
    }
    default:
      break;
  }
  auto ao = a.operands();
  auto bo = b.operands();
  const std::size_t n = std::min(ao.size(), bo.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(ao[i], bo[i])) return c;
  }
  return cmp3(ao.size(), bo.size());
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  int c = compare(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::pair<Expr, Expr> as_power(const Expr& factor) {
  if (factor.kind() == Kind::Power) return {factor.base(), factor.exponent()};
  return {factor, one_expr()};
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.value(), one_expr()};
  if (term.kind() == Kind::Product && term.operands()[0].is_number()) {
    auto ops = term.operands();
    if (ops.size() == 2) return {ops[0].value(), ops[1]};
    return {ops[0].value(), Build::raw(Kind::Product, std::vector<Expr>(ops.begin() + 1, ops.end()))};
  }
  return {Rational(1), term};
}

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is_zero()) return {};
  if (e.kind() == Kind::Sum) return {e.operands().begin(), e.operands().end()};
  return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
  Expr m = split_coefficient(e).second;
  if (m.is_one()) return {};
  if (m.kind() == Kind::Product) return {m.operands().begin(), m.operands().end()};
  return {m};
}

namespace {

bool factor_less(const Expr& a, const Expr& b) {
  auto [ab, ae] = as_power(a);
  auto [bb, be] = as_power(b);
  if (int c = compare(ab, bb)) return c < 0;
  return compare(ae, be) < 0;
}

// Builds coefficient * product(atoms) without further normalization.
Expr make_monomial(const Rational& c, std::vector<Expr> atoms) {
  if (c == 0) return zero_expr();
  std::sort(atoms.begin(), atoms.end(), factor_less);
  if (atoms.empty()) return Expr::number(c);
  if (c == 1 && atoms.size() == 1) return atoms[0];
  std::vector<Expr> ops;
  ops.reserve(atoms.size() + 1);
  if (c != 1) ops.push_back(Expr::number(c));
  for (auto& a : atoms) ops.push_back(std::move(a));
  return Build::raw(Kind::Product, std::move(ops));
}

Rational rational_pow(const Rational& b, long n) {
  if (n == 0) return 1;
  if (b == 0) {
    if (n < 0) throw DomainError("division by zero");
    return 0;
  }
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
  mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
  Rational r = n < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

// Exact q-th root of a nonnegative rational, if it exists.
std::optional<Rational> rational_root(const Rational& b, unsigned long q) {
  if (b < 0) return std::nullopt;
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), b.get_num().get_mpz_t(), q)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), b.get_den().get_mpz_t(), q)) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// Splits an exponent into floor of its rational constant and the remainder.
std::pair<long, Expr> split_exponent(const Expr& e) {
  Rational c = 0;
  if (e.is_number()) {
    c = e.value();
  } else if (e.kind() == Kind::Sum && e.operands()[0].is_number()) {
    c = e.operands()[0].value();
  }
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), c.get_num().get_mpz_t(), c.get_den().get_mpz_t());
  long n = fl.get_si();
  return {n, e - Expr(Rational(n))};
}

// Sum S = c * S' with S' having leading coefficient 1.
std::pair<Rational, Expr> sum_content(const Expr& s) {
  Rational c = split_coefficient(s.operands()[0]).first;
  if (c == 1) return {c, s};
  std::vector<Expr> ts;
  for (const auto& t : s.operands()) {
    auto [k, m] = split_coefficient(t);
    ts.push_back(make_monomial(k / c, factors_of(m)));
  }
  return {c, Build::raw(Kind::Sum, std::move(ts))};
}

Expr distribute(const Expr& a, const Expr& b) {
  std::vector<Expr> out;
  for (const auto& s : terms_of(a)) {
    for (const auto& t : terms_of(b)) out.push_back(mul({s, t}));
  }
  return add(std::move(out));
}

}  // namespace

Expr add(std::vector<Expr> terms) {
  ExprMap<Rational> acc;
  std::function<void(const Expr&)> push = [&](const Expr& t) {
    if (t.kind() == Kind::Sum) {
      for (const auto& s : t.operands()) push(s);
      return;
    }
    if (t.is_zero()) return;
    auto [c, m] = split_coefficient(t);
    auto it = acc.find(m);
    if (it == acc.end()) {
      acc.emplace(m, c);
    } else {
      it->second += c;
    }
  };
  for (const auto& t : terms) push(t);
  std::vector<Expr> out;
  for (auto& [m, c] : acc) {
    if (c == 0) continue;
    out.push_back(m.is_one() ? Expr::number(c) : make_monomial(c, factors_of(m)));
  }
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out[0];
  return Build::raw(Kind::Sum, std::move(out));
}

namespace {

// Prime factorization by trial division; std::nullopt for large inputs.
std::optional<std::vector<std::pair<mpz_class, long>>> small_factor(mpz_class n) {
  std::vector<std::pair<mpz_class, long>> out;
  if (n <= 1) return out;
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 48) return std::nullopt;
  for (mpz_class p = 2; p * p <= n; ++p) {
    long k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

Expr mul(std::vector<Expr> factors) {
  Rational coeff = 1;
  ExprMap<std::vector<Expr>> powers;
  std::vector<Expr> exp_args;
  bool saw_sum = false;

  std::function<void(const Expr&)> push = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Number:
        coeff *= f.value();
        return;
      case Kind::Product:
        for (const auto& g : f.operands()) push(g);
        return;
      case Kind::Exp:
        exp_args.push_back(f.operands()[0]);
        return;
      case Kind::Sum: {
        auto [c, s] = sum_content(f);
        coeff *= c;
        powers[s].push_back(one_expr());
        saw_sum = true;
        return;
      }
      default: {
        auto [b, e] = as_power(f);
        powers[b].push_back(e);
        return;
      }
    }
  };
  for (const auto& f : factors) {
    push(f);
    if (coeff == 0) return zero_expr();
  }
  (void)saw_sum;

  // positive rational bases under fractional rational exponents are split
  // into primes so that surds have a unique representation
  for (auto it = powers.begin(); it != powers.end();) {
    const Expr& b = it->first;
    if (!b.is_number() || b.value() <= 0) {
      ++it;
      continue;
    }
    Expr e = it->second.size() == 1 ? it->second[0] : add(it->second);
    if (!e.is_number() || e.is_integer()) {
      ++it;
      continue;
    }
    auto num = small_factor(b.value().get_num());
    auto den = small_factor(b.value().get_den());
    if (!num || !den || (num->size() == 1 && den->empty() && (*num)[0].second == 1)) {
      ++it;
      continue;
    }
    std::vector<std::pair<Expr, Expr>> split;
    for (const auto& [p, k] : *num) split.emplace_back(Expr::number(Rational(p)), e * Expr(k));
    for (const auto& [p, k] : *den) split.emplace_back(Expr::number(Rational(p)), -(e * Expr(k)));
    it = powers.erase(it);
    for (auto& [pb, pe] : split) powers[pb].push_back(pe);
    it = powers.begin();
  }

  std::vector<Expr> atoms;
  std::vector<std::pair<Expr, long>> expand;
  for (auto& [b, es] : powers) {
    Expr e = es.size() == 1 ? es[0] : add(es);
    if (e.is_zero()) continue;
    if (b.is_number() || b.kind() == Kind::Sum) {
      auto [n, rest] = split_exponent(e);
      if (b.is_number()) {
        if (rest.is_number() && b.value() > 0) {
          const Rational& r = rest.value();
          if (auto root = rational_root(b.value(), r.get_den().get_ui())) {
            coeff *= rational_pow(*root, r.get_num().get_si());
            rest = zero_expr();
          }
        }
        coeff *= rational_pow(b.value(), n);
        if (!rest.is_zero()) atoms.push_back(raw_pow(b, rest));
      } else {
        if (!rest.is_zero()) atoms.push_back(raw_pow(b, rest));
        if (n > 0) expand.emplace_back(b, n);
        if (n < 0) atoms.push_back(raw_pow(b, Expr(n)));
      }
      continue;
    }
    atoms.push_back(e.is_one() ? b : raw_pow(b, e));
  }
  if (coeff == 0) return zero_expr();

  Expr result;
  if (!exp_args.empty()) {
    Expr a = add(exp_args);
    Expr ex = exp(a);
    if (ex.kind() == Kind::Exp) {
      atoms.push_back(ex);
      result = make_monomial(coeff, std::move(atoms));
    } else {
      std::vector<Expr> rest{make_monomial(coeff, std::move(atoms)), ex};
      result = mul(std::move(rest));
    }
  } else {
    result = make_monomial(coeff, std::move(atoms));
  }
  for (const auto& [b, n] : expand) {
    for (long k = 0; k < n; ++k) result = distribute(result, b);
  }
  return result;
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return one_expr();
  if (exponent.is_one()) return base;
  if (base.is_one()) return one_expr();
  if (base.is_zero()) {
    if (exponent.is_number() && exponent.value() < 0) throw DomainError("division by zero");
    return zero_expr();
  }
  switch (base.kind()) {
    case Kind::Number:
      if (exponent.is_integer()) return Expr::number(rational_pow(base.value(), exponent.value().get_num().get_si()));
      return mul({raw_pow(base, exponent)});
    case Kind::Power:
      return pow(base.base(), base.exponent() * exponent);
    case Kind::Exp:
      return exp(base.operands()[0] * exponent);
    case Kind::Product: {
      std::vector<Expr> fs;
      for (const auto& f : base.operands()) fs.push_back(pow(f, exponent));
      return mul(std::move(fs));
    }
    case Kind::Sum: {
      auto [c, s] = sum_content(base);
      if (c < 0 && !exponent.is_integer()) {
        // keep the sign inside so the pulled content stays positive
        std::vector<Expr> neg;
        for (const auto& t : s.operands()) neg.push_back(-t);
        return mul({pow(Expr::number(-c), exponent), raw_pow(add(std::move(neg)), exponent)});
      }
      return mul({pow(Expr::number(c), exponent), raw_pow(s, exponent)});
    }
    default:
      return mul({raw_pow(base, exponent)});
  }
}

Expr exp(const Expr& arg) {
  if (arg.is_zero()) return one_expr();
  if (arg.kind() == Kind::Log) return arg.operands()[0];
  // exp(k*ln(B) + r) = B^k * exp(r)
  std::vector<Expr> keep;
  std::vector<Expr> pulled;
  for (const auto& t : terms_of(arg)) {
    auto fs = factors_of(t);
    int logs = 0;
    Expr logf;
    for (const auto& f : fs) {
      if (f.kind() == Kind::Log) {
        ++logs;
        logf = f;
      } else if (f.kind() == Kind::Power && f.base().kind() == Kind::Log) {
        logs += 2;
      }
    }
    if (logs == 1) {
      Expr k = t / logf;
      pulled.push_back(pow(logf.operands()[0], k));
    } else {
      keep.push_back(t);
    }
  }
  if (pulled.empty()) return Build::raw(Kind::Exp, {arg});
  Expr rest = add(keep);
  if (!rest.is_zero()) pulled.push_back(Build::raw(Kind::Exp, {rest}));
  return mul(std::move(pulled));
}

Expr log(const Expr& arg) {
  if (arg.is_one()) return zero_expr();
  switch (arg.kind()) {
    case Kind::Number: {
      const Rational& v = arg.value();
      if (v <= 0) throw DomainError("ln of a nonpositive number");
      if (v.get_den() != 1) {
        return log(Expr::number(Rational(v.get_num()))) - log(Expr::number(Rational(v.get_den())));
      }
      return Build::raw(Kind::Log, {arg});
    }
    case Kind::Exp:
      return arg.operands()[0];
    case Kind::Power:
      return arg.exponent() * log(arg.base());
    case Kind::Product: {
      auto [c, m] = split_coefficient(arg);
      if (c < 0) return Build::raw(Kind::Log, {arg});
      std::vector<Expr> ts{log(Expr::number(c))};
      for (const auto& f : factors_of(arg)) ts.push_back(log(f));
      return add(std::move(ts));
    }
    default:
      return Build::raw(Kind::Log, {arg});
  }
}

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, mul({Expr(-1), b})}); }
Expr operator-(const Expr& a) { return mul({Expr(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return mul({a, pow(b, Expr(-1))});
}
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

bool contains(const Expr& e, const Expr& atom) {
  if (e == atom) return true;
  for (const auto& op : e.operands()) {
    if (contains(op, atom)) return true;
  }
  return false;
}

bool contains_symbol(const Expr& e, const std::string& name) {
  if (e.is_symbol()) return e.name() == name;
  for (const auto& op : e.operands()) {
    if (contains_symbol(op, name)) return true;
  }
  return false;
}

bool contains_function(const Expr& e, const std::string& name) {
  if (e.is_function() && e.name() == name) return true;
  for (const auto& op : e.operands()) {
    if (contains_function(op, name)) return true;
  }
  return false;
}

void collect_symbols(const Expr& e, std::vector<std::string>& out) {
  if (e.is_symbol()) {
    if (std::find(out.begin(), out.end(), e.name()) == out.end()) out.push_back(e.name());
    return;
  }
  for (const auto& op : e.operands()) collect_symbols(op, out);
}

void collect_functions(const Expr& e, std::vector<Expr>& out) {
  if (e.is_function()) {
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  for (const auto& op : e.operands()) collect_functions(op, out);
}

Expr transform(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& f) {
  Expr rebuilt = e;
  if (!e.operands().empty()) {
    std::vector<Expr> ops;
    ops.reserve(e.operands().size());
    bool changed = false;
    for (const auto& op : e.operands()) {
      ops.push_back(transform(op, f));
      changed = changed || !(ops.back().node() == op.node());
    }
    if (changed) {
      switch (e.kind()) {
        case Kind::Function:
          rebuilt = Expr::function(e.name(), e.params(), std::move(ops), e.derivs());
          break;
        case Kind::Exp:
          rebuilt = exp(ops[0]);
          break;
        case Kind::Log:
          rebuilt = log(ops[0]);
          break;
        case Kind::Power:
          rebuilt = pow(ops[0], ops[1]);
          break;
        case Kind::Product:
          rebuilt = mul(std::move(ops));
          break;
        case Kind::Sum:
          rebuilt = add(std::move(ops));
          break;
        default:
          break;
      }
    }
  }
  if (auto r = f(rebuilt)) return *r;
  return rebuilt;
}

}  // namespace lieprelim
