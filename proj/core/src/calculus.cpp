#include "lieprelim/calculus.hpp"

#include <algorithm>

namespace lieprelim {

namespace {

bool is_var(const Expr& e, const Expr& var) { return e == var; }

Expr diff_impl(const Expr& e, const Expr& var, const DiffOptions& opts) {
  switch (e.kind()) {
    case Kind::Number:
      return 0;
    case Kind::Symbol:
      return is_var(e, var) ? Expr(1) : Expr(0);
    case Kind::Function: {
      if (is_var(e, var)) return 1;
      if (opts.frozen.count(e.name())) return 0;
      std::vector<Expr> terms;
      auto args = e.operands();
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expr da = diff_impl(args[i], var, opts);
        if (da.is_zero()) continue;
        auto d = e.derivs();
        ++d[i];
        terms.push_back(da * e.with_derivs(std::move(d)));
      }
      return add(std::move(terms));
    }
    case Kind::Exp: {
      Expr da = diff_impl(e.operands()[0], var, opts);
      return da.is_zero() ? Expr(0) : da * e;
    }
    case Kind::Log: {
      const Expr& a = e.operands()[0];
      Expr da = diff_impl(a, var, opts);
      return da.is_zero() ? Expr(0) : da / a;
    }
    case Kind::Power: {
      const Expr& b = e.base();
      const Expr& x = e.exponent();
      Expr db = diff_impl(b, var, opts);
      Expr dx = diff_impl(x, var, opts);
      Expr out;
      if (!db.is_zero()) out += x * pow(b, x - Expr(1)) * db;
      if (!dx.is_zero()) out += e * log(b) * dx;
      return out;
    }
    case Kind::Product: {
      auto ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expr d = diff_impl(ops[i], var, opts);
        if (d.is_zero()) continue;
        std::vector<Expr> fs(ops.begin(), ops.end());
        fs[i] = d;
        terms.push_back(mul(std::move(fs)));
      }
      return add(std::move(terms));
    }
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.operands()) terms.push_back(diff_impl(t, var, opts));
      return add(std::move(terms));
    }
  }
  return 0;
}

}  // namespace

Expr diff(const Expr& e, const Expr& var, const DiffOptions& opts) {
  if (!var.is_symbol() && !(var.is_function() && var.derivative_order() == 0)) {
    throw Error("diff: variable must be a symbol or an underived function application");
  }
  return diff_impl(e, var, opts);
}

Expr diff(const Expr& e, const std::string& symbol, const DiffOptions& opts) {
  return diff_impl(e, sym(symbol), opts);
}

Expr diff_n(const Expr& e, const std::string& symbol, int n, const DiffOptions& opts) {
  Expr r = e;
  for (int i = 0; i < n; ++i) r = diff(r, symbol, opts);
  return r;
}

namespace {

Expr subst_impl(const Expr& e, const Bindings& b);

Expr apply_function_binding(const Expr& fn, const FunctionBinding& fb, std::vector<Expr> args) {
  if (fb.params.size() != fn.params().size()) {
    throw Error("binding for " + fn.name() + " has wrong arity");
  }
  Expr body = fb.body;
  for (std::size_t i = 0; i < fb.params.size(); ++i) body = diff_n(body, fb.params[i], fn.derivs()[i]);
  Bindings inner;
  for (std::size_t i = 0; i < fb.params.size(); ++i) inner.bind(fb.params[i], args[i]);
  inner.allow_derivative_arguments = true;
  return subst_impl(body, inner);
}

Expr subst_impl(const Expr& e, const Bindings& b) {
  if (!b.atoms.empty()) {
    auto it = b.atoms.find(e);
    if (it != b.atoms.end()) return it->second;
  }
  if (e.operands().empty()) return e;
  std::vector<Expr> ops;
  ops.reserve(e.operands().size());
  for (const auto& op : e.operands()) ops.push_back(subst_impl(op, b));
  switch (e.kind()) {
    case Kind::Function: {
      auto fb = b.functions.find(e.name());
      if (fb != b.functions.end()) return apply_function_binding(e, fb->second, std::move(ops));
      if (!b.allow_derivative_arguments) {
        for (std::size_t i = 0; i < ops.size(); ++i) {
          if (e.derivs()[i] > 0 && !(ops[i] == e.operands()[i]) && !ops[i].is_symbol()) {
            throw Error("substitution into differentiation argument '" + e.params()[i] + "' of inert derivative of " +
                        e.name());
          }
        }
      }
      return Expr::function(e.name(), e.params(), std::move(ops), e.derivs());
    }
    case Kind::Exp:
      return exp(ops[0]);
    case Kind::Log:
      return log(ops[0]);
    case Kind::Power:
      return pow(ops[0], ops[1]);
    case Kind::Product:
      return mul(std::move(ops));
    case Kind::Sum:
      return add(std::move(ops));
    default:
      return e;
  }
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& b) { return subst_impl(e, b); }

std::vector<std::pair<Expr, Expr>> collect(const Expr& e, const std::vector<Expr>& vars) {
  ExprMap<std::vector<Expr>> groups;
  for (const auto& t : terms_of(e)) {
    auto [c, m] = split_coefficient(t);
    std::vector<Expr> mono;
    std::vector<Expr> rest{Expr::number(c)};
    for (const auto& f : factors_of(m)) {
      auto [base, ex] = as_power(f);
      bool is_v = std::find(vars.begin(), vars.end(), base) != vars.end();
      if (is_v) {
        if (!ex.is_integer() || ex.value() < 0) {
          throw Error("collect: non-polynomial dependence on variable");
        }
        mono.push_back(f);
        continue;
      }
      for (const auto& v : vars) {
        if (contains(f, v)) throw Error("collect: non-polynomial dependence on variable");
      }
      rest.push_back(f);
    }
    groups[mul(std::move(mono))].push_back(mul(std::move(rest)));
  }
  std::vector<std::pair<Expr, Expr>> out;
  for (auto& [m, cs] : groups) {
    Expr c = add(std::move(cs));
    if (!c.is_zero()) out.emplace_back(m, c);
  }
  // highest total degree first
  auto degree = [](const Expr& m) {
    long d = 0;
    for (const auto& f : factors_of(m)) d += as_power(f).second.value().get_num().get_si();
    return d;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& a, const auto& b) { return degree(a.first) > degree(b.first); });
  return out;
}

bool VanishingDerivative::matches(const Expr& fn) const {
  if (!fn.is_function() || fn.name() != function) return false;
  const auto& d = fn.derivs();
  if (d.size() != derivs.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < derivs[i]) return false;
  }
  return true;
}

Expr apply_vanishing(const Expr& e, const std::vector<VanishingDerivative>& rules) {
  if (rules.empty()) return e;
  return transform(e, [&](const Expr& n) -> std::optional<Expr> {
    if (!n.is_function()) return std::nullopt;
    for (const auto& r : rules) {
      if (r.matches(n)) return Expr(0);
    }
    return std::nullopt;
  });
}

bool depends_on(const Expr& e, const std::string& symbol, const DiffOptions& opts) {
  return !diff(e, symbol, opts).is_zero();
}

}  // namespace lieprelim
