#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lieprelim/expr.hpp"
#include "lieprelim/fields.hpp"

namespace lieprelim {

// a1 D^x + a2 D^t + a3 d_x + a0 d_t + G(h) in the equivalence algebra of
// u_t = f u_x^2 + g u_xx, where
//   D^x = x dx + 2f df + 2g dg,  D^t = t dt - f df - g dg,
//   G(h) = h du - (h_u f + h_uu g) df.
struct EquivAlgebraElement {
  Expr a1 = 0, a2 = 0, a3 = 0, a0 = 0;
  Expr h = 0;  // in the symbol u

  static EquivAlgebraElement Dx();
  static EquivAlgebraElement Dt();
  static EquivAlgebraElement dx();
  static EquivAlgebraElement dt();
  static EquivAlgebraElement G(const Expr& h);

  bool is_zero() const;
  // Realization on (t, x, u, f, g).
  VectorField to_field() const;

  friend bool operator==(const EquivAlgebraElement& a, const EquivAlgebraElement& b);
  friend EquivAlgebraElement operator+(const EquivAlgebraElement& a, const EquivAlgebraElement& b);
  friend EquivAlgebraElement operator-(const EquivAlgebraElement& a, const EquivAlgebraElement& b);
  friend EquivAlgebraElement operator*(const Expr& k, const EquivAlgebraElement& v);
};

using Basis = std::vector<EquivAlgebraElement>;

// Bracket from the structure constants:
//   [dx, D^x] = dx, [dt, D^t] = dt, [G(p), G(q)] = G(p q_u - q p_u).
EquivAlgebraElement bracket(const EquivAlgebraElement& v, const EquivAlgebraElement& w);

// "Dx + 3*Dt + 5*dx - G(u^2)".  Symbols Dx, Dt, dx, dt; G(...) takes an
// expression in u.  The element must be linear in the generators.
EquivAlgebraElement parse_element(std::string_view text);
std::string to_string(const EquivAlgebraElement& v);
std::string to_latex(const EquivAlgebraElement& v);

// Exact equality, with the numeric oracle deciding h-components whose
// normal forms differ.
bool equivalent(const EquivAlgebraElement& a, const EquivAlgebraElement& b);

// ---- adjoint action ----

struct SeriesResult {
  EquivAlgebraElement value;
  bool terminated = false;  // the bracket after the last term vanishes
  int terms = 0;            // nonzero terms summed
};

// sum_{n<=order} eps^n/n! {v^n, w}, {v^0,w} = w, {v^n,w} = -[v, {v^(n-1),w}].
SeriesResult adjoint_series(const EquivAlgebraElement& v, const EquivAlgebraElement& w, const Expr& eps,
                            int order);

class OutsideCatalog : public Error {
 public:
  using Error::Error;
};

// Closed form of Ad(e^{eps v}) w for v a multiple of one generator.  For
// v = G(h1) the flow of h1 must be in the catalog (constant, affine,
// c exp(k u), c u^k); throws OutsideCatalog otherwise.
EquivAlgebraElement adjoint_closed(const EquivAlgebraElement& v, const EquivAlgebraElement& w, const Expr& eps);

// Flow H(u, eps) of h du, H_eps = h(H), H(u, 0) = u, when in the catalog.
std::optional<Expr> flow(const Expr& h, const Expr& eps);

// Numeric h~(u) = w_h(H(u,-eps)) / H_u(u,-eps) by RK4 on the flow and its
// variational equation.  Fallback for generators outside the catalog.
double adjoint_h_numeric(const Expr& h1, const Expr& h2, double eps, double u, int steps = 2000);

// Push-forward of an element by a transformation of the equivalence group:
//   a0 -> A1 a0 - A0 a2,  a3 -> B1 a3 - B0 a1,  h -> h(U~)/U~_u  (U~ = U^-1).
EquivAlgebraElement push_forward(const EquivTransform& T, const EquivAlgebraElement& v);

// ---- canonical lists ----

struct CanonicalSubalgebra {
  std::string list_id;  // 1D-1..1D-4, 2D-1..2D-8, HD-1..HD-5
  std::map<std::string, Expr> parameters;
  Basis basis;
};

// Canonical representative; missing parameters default to their symbols.
CanonicalSubalgebra canonical(const std::string& list_id, const std::map<std::string, Expr>& parameters = {});
// True when the parameters lie in the ranges of the canonical list.
bool in_canonical_range(const CanonicalSubalgebra& s);
// The five appropriate subalgebras of dimension above two.
std::vector<CanonicalSubalgebra> higher_dimensional_list();

// ---- normalization ----

struct WitnessStep {
  enum class Kind { Basis, Push, NumericGauge };
  Kind kind = Kind::Basis;
  std::string label;
  // Basis: new_i = sum_j matrix[i][j] * old_j.
  std::vector<std::vector<Rational>> matrix;
  // Push.
  EquivTransform transform;
  // NumericGauge: h of the single element replaced by `target`; the flow of
  // h was integrated on [-2, 2] with the recorded Richardson error.
  Expr target = 0;
  double error = 0.0;
};

struct NormalizationWitness {
  std::vector<WitnessStep> chain;
  CanonicalSubalgebra target;
  // Proof branch taken at each decision.
  std::vector<std::string> trace;
};

class NotSubalgebra : public Error {
 public:
  using Error::Error;
};

struct Normalization {
  CanonicalSubalgebra result;
  NormalizationWitness witness;
};

// Input must have rational a's; a0 is dropped (kernel ideal).  h must be in
// the gauge catalog, or for a single element, have a flow that the numeric
// fallback can invert on [-2, 2].
Normalization normalize_1d(const EquivAlgebraElement& v);
// Throws NotSubalgebra when [v1, v2] leaves the span, Error when degenerate.
Normalization normalize_2d(const EquivAlgebraElement& v1, const EquivAlgebraElement& v2);

// Replays the chain on `input` and compares with the target basis.
bool replay(const NormalizationWitness& w, const Basis& input);
Basis apply_step(const WitnessStep& step, const Basis& basis);

// ---- structure of subalgebras ----

// Coordinates over (a1, a2, a3, a0, monomials of h); exact for rational a's
// and h that are rational combinations of normal-form monomials.
int rank(const Basis& s);
// Coefficients of `v` in the basis `s`, or nullopt when outside the span.
std::optional<std::vector<Rational>> in_span(const Basis& s, const EquivAlgebraElement& v);
// Same for vector fields whose components are rational combinations of
// monomials, e.g. span{dt, dx, 2*t*dt + x*dx}.
std::optional<std::vector<Rational>> in_span(const std::vector<VectorField>& s, const VectorField& v);
bool is_closed(const Basis& s);
// dim(span(s) ∩ <D^t, G(h)>).
int m_value(const Basis& s);
// Wronskian of the h-components, as an expression in u.
Expr wronskian(const std::vector<Expr>& hs);

struct AppropriatenessReport {
  bool closed = false;
  bool contains_Dt = false;
  int m = 0;
  int dimension = 0;
  // True when span(s) ∩ <D^t, G(h)> lies inside <G(h)>.
  bool pure_g_intersection = true;
  std::optional<bool> candidate_ok;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

AppropriatenessReport appropriateness(const Basis& s, const std::optional<std::pair<Expr, Expr>>& candidate = {});

}  // namespace lieprelim
