#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lieprelim/expr.hpp"

namespace lieprelim {

struct DiffOptions {
  // Unknown functions treated as independent of every symbol (arbitrary
  // elements regarded as coordinates of the extended space).
  std::set<std::string> frozen;
};

// Partial derivative with respect to a symbol or an unknown-function atom
// (an underived application such as f(x,u)).
Expr diff(const Expr& e, const Expr& var, const DiffOptions& opts = {});
Expr diff(const Expr& e, const std::string& symbol, const DiffOptions& opts = {});
Expr diff_n(const Expr& e, const std::string& symbol, int n, const DiffOptions& opts = {});

// Replacement rule for an unknown function: f(params) := body.
struct FunctionBinding {
  std::vector<std::string> params;
  Expr body;
};

struct Bindings {
  ExprMap<Expr> atoms;                               // symbols, jet variables, applications
  std::map<std::string, FunctionBinding> functions;  // rewrite every f^{(D)}(args)
  bool allow_derivative_arguments = false;

  Bindings& bind(const Expr& atom, const Expr& value) {
    atoms.insert_or_assign(atom, value);
    return *this;
  }
  Bindings& bind(const std::string& symbol, const Expr& value) { return bind(sym(symbol), value); }
  Bindings& bind_function(const std::string& name, std::vector<std::string> params, const Expr& body) {
    functions.insert_or_assign(name, FunctionBinding{std::move(params), body});
    return *this;
  }
};

// Simultaneous substitution followed by normalization.
Expr substitute(const Expr& e, const Bindings& b);

// Coefficients of `e` viewed as a polynomial in `vars` (symbols or function
// atoms).  Throws Error on non-polynomial dependence.
std::vector<std::pair<Expr, Expr>> collect(const Expr& e, const std::vector<Expr>& vars);

// Zero rules for derivatives: every derivative of `function` whose
// multi-index dominates `derivs` vanishes.  An all-zero index kills the
// function itself.
struct VanishingDerivative {
  std::string function;
  std::vector<int> derivs;

  bool matches(const Expr& fn) const;
};

Expr apply_vanishing(const Expr& e, const std::vector<VanishingDerivative>& rules);

bool depends_on(const Expr& e, const std::string& symbol, const DiffOptions& opts = {});

}  // namespace lieprelim
