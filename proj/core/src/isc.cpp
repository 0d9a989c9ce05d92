#include "lieprelim/format.hpp"
#include "lieprelim/verify.hpp"

namespace lieprelim {

namespace {

struct Components {
  Expr xi, eta, phi, theta;
};

Components components(const EquivAlgebraElement& v) {
  VectorField w = v.to_field();
  return {w.coefficient("x"), w.coefficient("u"), w.coefficient("f"), w.coefficient("g")};
}

Expr residual(const Expr& xi, const Expr& eta, const Expr& phi, const Expr& F, const Bindings& values) {
  return xi * diff(F, "x") + eta * diff(F, "u") - substitute(phi, values);
}

}  // namespace

std::vector<IscEquation> isc_system(const Basis& s) {
  Expr F = Expr::function("f", {"x", "u"});
  Expr Gf = Expr::function("g", {"x", "u"});
  Bindings values;
  values.bind("f", F).bind("g", Gf);
  std::vector<IscEquation> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Components c = components(s[i]);
    std::string k = std::to_string(i + 1);
    out.push_back({"f" + k, residual(c.xi, c.eta, c.phi, F, values)});
    out.push_back({"g" + k, residual(c.xi, c.eta, c.theta, Gf, values)});
  }
  return out;
}

IscResult isc_check(const Basis& s, const Expr& f0, const Expr& g0, const OracleOptions& opts) {
  if (g0.is_zero()) throw DomainError("g must not vanish");
  Bindings values;
  values.bind("f", f0).bind("g", g0);
  IscResult r;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Components c = components(s[i]);
    std::string k = std::to_string(i + 1);
    Expr rf = residual(c.xi, c.eta, c.phi, f0, values);
    Expr rg = residual(c.xi, c.eta, c.theta, g0, values);
    if (!is_identically_zero(rf, opts)) r.residuals.emplace_back("f" + k, rf);
    if (!is_identically_zero(rg, opts)) r.residuals.emplace_back("g" + k, rg);
  }
  r.passed = r.residuals.empty();
  return r;
}

}  // namespace lieprelim
