#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lieprelim/expr.hpp"
#include "lieprelim/parse.hpp"

namespace lieprelim {

// Jet space over independent variables (t, x) and dependent variable u,
// truncated at order 3.  Jet variables are plain symbols named u_t, u_x,
// u_tx, u_xxx, ... with t-indices written first.
struct JetSpace {
  int order = 3;

  static std::string name(int nt, int nx);
  // (nt, nx) for u and its derivatives, std::nullopt otherwise.
  static std::optional<std::pair<int, int>> index(std::string_view symbol);

  Expr variable(int nt, int nx) const;
  // Positive-order jet variables within the truncation, sorted by order.
  std::vector<Expr> derivatives() const;
  bool contains(const Expr& jet_var) const;
};

// Total derivative D_t or D_x.  Throws Error when the result would leave the
// truncated jet space.
Expr total_derivative(const Expr& e, std::string_view wrt, const JetSpace& js = {});

// An auxiliary condition A_v = 0: arbitrary element A does not depend on v.
struct AuxiliaryCondition {
  std::string function;
  std::string variable;
};

struct EquationClass {
  std::string name;
  Expr delta;
  std::string solved_for = "u_t";
  Expr rhs;
  std::vector<FunctionSignature> arbitrary_elements;
  std::vector<AuxiliaryCondition> auxiliary;
  std::vector<Expr> nonvanishing;

  Environment environment() const;
  const FunctionSignature* element(std::string_view name) const;
  Expr parse(std::string_view text) const;
};

// Reads a class declaration in JSON:
//   {"name": ..., "solved_for": "u_t", "rhs": "...", "delta": "..." (optional),
//    "arbitrary_elements": {"f": ["x","u"], ...},
//    "auxiliary": ["f_t", ...], "nonvanishing": ["g"]}
// Throws Error on malformed input.
EquationClass parse_class(std::string_view json_text);
EquationClass load_class(const std::string& path);

// u_t = f(x,u) u_x^2 + g(x,u) u_xx, g != 0.
EquationClass generalized_diffusion_class();
// u_t = A u_xx + B u_x + C u with A, B, C functions of (t, x), A != 0.
EquationClass linear_class();

// The member of `cls` with arbitrary elements fixed to `values` (expressions
// in their arguments).  `parameters` declares any unknown functions the values
// refer to (e.g. ftilde(x)); they become the arbitrary elements of the result.
EquationClass specialize(const EquationClass& cls, const std::map<std::string, Expr>& values,
                         const std::vector<FunctionSignature>& parameters = {});

// Replaces the solved jet variable by the right-hand side.  Differential
// consequences (u_tx, u_tt, ...) are left alone.
Expr on_manifold(const Expr& e, const EquationClass& cls);

struct DeterminingEquation {
  Expr monomial;
  Expr lhs;
};

struct DeterminingSystem {
  std::vector<DeterminingEquation> equations;

  bool empty() const { return equations.empty(); }
  std::size_t size() const { return equations.size(); }
  const DeterminingEquation* find(const Expr& monomial) const;
  // Sum of monomial * lhs.
  Expr reconstruct() const;
};

// Coefficients of the positive-order jet monomials of `e`.  Ordered by number
// of t-derivatives, then degree, then highest order, all descending.
DeterminingSystem split_determining(const Expr& e, const JetSpace& js = {});

}  // namespace lieprelim
