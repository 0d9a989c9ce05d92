#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lieprelim/calculus.hpp"
#include "lieprelim/expr.hpp"
#include "lieprelim/jet.hpp"

namespace lieprelim {

// Vector field sum_c coefficient(c) * d_c over an explicit coordinate list.
// Arbitrary-element directions (f, g, ...) are ordinary coordinates here:
// coefficients refer to them through plain symbols.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<std::string> coordinates) : coords_(std::move(coordinates)) {}
  VectorField(std::vector<std::string> coordinates, const std::map<std::string, Expr>& coeffs);

  // tau*dt + xi*dx + eta*du.
  static VectorField base(const Expr& tau, const Expr& xi, const Expr& eta);

  const std::vector<std::string>& coordinates() const { return coords_; }
  Expr coefficient(const std::string& c) const;
  VectorField& set(const std::string& c, const Expr& value);
  bool is_zero() const;

  // Same coefficients over a wider coordinate list (missing ones are zero).
  VectorField extend(const std::vector<std::string>& coordinates) const;
  // Restriction to a subset of coordinates.
  VectorField project(const std::vector<std::string>& coordinates) const;

  // Directional derivative of `e`, treating every coordinate as a symbol.
  Expr operator()(const Expr& e) const;

  VectorField map(const std::function<Expr(const Expr&)>& fn) const;

  friend bool operator==(const VectorField& a, const VectorField& b);
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& k, const VectorField& v);

 private:
  std::vector<std::string> coords_;
  std::map<std::string, Expr> coeffs_;
};

// Coordinates t, x, u.
const std::vector<std::string>& base_coordinates();
// t, x, u followed by the arbitrary elements of `cls`.
std::vector<std::string> extended_coordinates(const EquationClass& cls);

std::string to_string(const VectorField& v);
std::string to_latex(const VectorField& v);
// Parses "2*t*dt + x*dx" with direction symbols d<coordinate>.
VectorField parse_field(std::string_view text, const std::vector<std::string>& coordinates,
                        const Environment& env = {});

// [v, w] = v(w) - w(v) componentwise.  Throws on mismatched coordinates.
VectorField commutator(const VectorField& v, const VectorField& w);

struct ProlongedField {
  VectorField field;
  Expr eta_t, eta_x, eta_xx;
  // Prolongation to the auxiliary derivatives: "f_t" -> phi^t under the
  // reduced total derivative.
  std::map<std::string, Expr> auxiliary;
};

// Second prolongation.  Arbitrary-element coordinates of `v` are carried
// through; their first prolongation is computed for every auxiliary
// condition of `cls`.
ProlongedField prolong(const VectorField& v, const EquationClass& cls);

// Q^(2) e.  Arbitrary elements occurring in `e` as applications f(x,u) are
// held fixed under d_t, d_x, d_u and differentiated as atoms along their own
// directions.  Throws when `e` involves jet variables above order 2.
Expr apply(const ProlongedField& pf, const Expr& e, const EquationClass& cls);

// Replaces arbitrary-element symbols (f) by their applications (f(x,u)).
Expr realize(const Expr& e, const EquationClass& cls);

// Point transformation z~ = rules(z), with optional explicit inverse
// z = inverse(z~).  Target coordinates reuse the source names.
struct PointTransformation {
  std::string label;
  std::vector<std::string> coordinates;
  std::map<std::string, Expr> rules;
  std::optional<std::map<std::string, Expr>> inverse;
  // Expressions required to be nonzero (Jacobian factors).
  std::vector<Expr> nondegenerate;

  Expr rule(const std::string& c) const;
  bool invertible() const { return inverse.has_value(); }
  Expr apply_to(const Expr& e) const;    // e(z) with z := rules
  Expr pull_back(const Expr& e) const;   // e(z) with z := inverse(z~)
};

PointTransformation identity_transformation(const std::vector<std::string>& coordinates);
// p after q.
PointTransformation compose(const PointTransformation& p, const PointTransformation& q);
PointTransformation invert(const PointTransformation& p);
// True when every rule reduces to the bare coordinate.
bool is_identity(const PointTransformation& p);

// Push-forward p_* v in target coordinates.  Throws when p has no inverse.
VectorField pushforward(const PointTransformation& p, const VectorField& v);

// Functions U(u) with known inverses: affine, exp(c u), u^k, ln u and their
// compositions.  `inverse` is empty outside the catalog.
struct UFunction {
  Expr forward;                 // in the symbol u
  std::optional<Expr> inverse;  // in the symbol u

  static UFunction identity();
  static UFunction affine(const Expr& alpha, const Expr& beta);
  static UFunction exponential(const Expr& c);
  static UFunction power(const Expr& k);
  static UFunction logarithm();
  static UFunction general(const Expr& forward);
  // this after inner: U(V(u)).
  UFunction after(const UFunction& inner) const;
  UFunction inverted() const;
};

// Element of the equivalence group of u_t = f u_x^2 + g u_xx:
//   t~ = A1 t + A0, x~ = B1 x + B0, u~ = U(u),
//   f~ = B1^2/(A1 U_u) (f - U_uu/U_u g), g~ = B1^2/A1 g.
struct EquivTransform {
  Expr A0 = 0, A1 = 1, B0 = 0, B1 = 1;
  UFunction U = UFunction::identity();

  static EquivTransform translation_t(const Expr& a0);
  static EquivTransform translation_x(const Expr& b0);
  static EquivTransform scaling_t(const Expr& a1);
  static EquivTransform scaling_x(const Expr& b1);
  static EquivTransform gauge(const UFunction& u);

  // The transformation on (t, x, u, f, g).  Has an inverse when U does.
  PointTransformation point() const;
  std::optional<EquivTransform> inverted() const;
  // this after q.
  EquivTransform after(const EquivTransform& q) const;
};

// (f~, g~) in the target coordinates for the class element (f0, g0) given in
// (x, u).  Throws DomainError when the transformation is degenerate.
std::pair<Expr, Expr> transform_class_element(const EquivTransform& p, const Expr& f0, const Expr& g0);

// Discrete transformations of alternating signs.
EquivTransform reflection_t();
EquivTransform reflection_x();
EquivTransform reflection_u();

}  // namespace lieprelim
