#include "lieprelim/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lieprelim {

namespace {

class Evaluator {
 public:
  Evaluator(const Assignment& at, const FunctionTable& fns) : at_(at), fns_(fns) {}

  double eval(const Expr& e) {
    switch (e.kind()) {
      case Kind::Number:
        return e.value().get_d();
      case Kind::Symbol: {
        auto it = at_.find(e.name());
        if (it == at_.end()) throw Error("eval_numeric: unassigned symbol " + e.name());
        return it->second;
      }
      case Kind::Function:
        return eval_function(e);
      case Kind::Exp:
        return std::exp(eval(e.operands()[0]));
      case Kind::Log: {
        double a = eval(e.operands()[0]);
        if (!(a > 0)) throw DomainError("ln of a nonpositive argument");
        return std::log(a);
      }
      case Kind::Power: {
        double b = eval(e.base());
        const Expr& x = e.exponent();
        if (x.is_integer()) {
          if (b == 0 && x.value() < 0) throw DomainError("division by zero");
          return std::pow(b, x.value().get_d());
        }
        double p = eval(x);
        if (b < 0 || (b == 0 && p <= 0)) throw DomainError("power of a nonpositive argument");
        return std::pow(b, p);
      }
      case Kind::Product: {
        double r = 1;
        for (const auto& f : e.operands()) r *= eval(f);
        return r;
      }
      case Kind::Sum: {
        double r = 0;
        for (const auto& t : e.operands()) r += eval(t);
        return r;
      }
    }
    return 0;
  }

 private:
  double eval_function(const Expr& e) {
    auto it = fns_.find(e.name());
    if (it == fns_.end()) throw Error("eval_numeric: no closed form for function " + e.name());
    const FunctionBinding& fb = it->second;
    std::string key = e.name();
    for (int d : e.derivs()) key += ":" + std::to_string(d);
    auto c = cache_.find(key);
    if (c == cache_.end()) {
      Expr body = fb.body;
      for (std::size_t i = 0; i < fb.params.size(); ++i) body = diff_n(body, fb.params[i], e.derivs()[i]);
      c = cache_.emplace(key, body).first;
    }
    Assignment inner = at_;
    for (std::size_t i = 0; i < fb.params.size(); ++i) inner[fb.params[i]] = eval(e.operands()[i]);
    Evaluator sub(inner, fns_);
    return sub.eval(c->second);
  }

  const Assignment& at_;
  const FunctionTable& fns_;
  std::map<std::string, Expr> cache_;
};

Rational random_rational(std::mt19937_64& rng, int lo, int hi, int den) {
  std::uniform_int_distribution<int> d(lo * den, hi * den);
  Rational q(d(rng), den);
  q.canonicalize();
  return q;
}

}  // namespace

double eval_numeric(const Expr& e, const Assignment& at, const FunctionTable& fns) {
  Evaluator ev(at, fns);
  double v = ev.eval(e);
  if (!std::isfinite(v)) throw DomainError("non-finite value");
  return v;
}

FunctionTable random_function_table(const Expr& e, std::mt19937_64& rng) {
  std::vector<Expr> fns;
  collect_functions(e, fns);
  FunctionTable table;
  for (const auto& f : fns) {
    if (table.count(f.name())) continue;
    Expr body = Expr(random_rational(rng, 1, 3, 4));
    for (const auto& p : f.params()) {
      Expr s = sym(p);
      body += Expr(random_rational(rng, 1, 2, 4)) * exp(Expr(random_rational(rng, -1, 1, 4)) * s);
      body += Expr(random_rational(rng, 0, 1, 8)) * s * s;
    }
    if (f.params().size() >= 2) body += Expr(random_rational(rng, 0, 1, 8)) * sym(f.params()[0]) * sym(f.params()[1]);
    table.emplace(f.name(), FunctionBinding{f.params(), body});
  }
  return table;
}

OracleResult numerically_zero(const Expr& e, const OracleOptions& opts) {
  OracleResult res;
  if (e.is_zero()) return res;
  std::vector<std::string> symbols;
  collect_symbols(e, symbols);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(opts.lo, opts.hi);
  int attempts = 0;
  while (res.evaluated < opts.samples && attempts < opts.samples * 20) {
    ++attempts;
    Assignment at;
    for (const auto& s : symbols) at[s] = dist(rng);
    FunctionTable fns = random_function_table(e, rng);
    try {
      double v = eval_numeric(e, at, fns);
      double scale = 1.0;
      for (const auto& t : terms_of(e)) scale += std::fabs(eval_numeric(t, at, fns));
      double rel = std::fabs(v) / scale;
      res.max_abs = std::max(res.max_abs, std::fabs(v));
      ++res.evaluated;
      if (rel > opts.tolerance) res.zero = false;
    } catch (const DomainError&) {
      continue;
    }
  }
  if (res.evaluated == 0) res.zero = false;
  return res;
}

bool is_identically_zero(const Expr& e, const OracleOptions& opts) {
  if (e.is_zero()) return true;
  return numerically_zero(e, opts).zero;
}

}  // namespace lieprelim
