#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieprelim/classify.hpp"
#include "lieprelim/expr.hpp"
#include "lieprelim/fields.hpp"
#include "lieprelim/jet.hpp"
#include "lieprelim/numeric.hpp"

namespace lieprelim {

// ---- determining equations ----

// tau(t,x,u)*dt + xi(t,x,u)*dx + eta(t,x,u)*du.
VectorField generic_ansatz();

// Q^(2) Delta on the manifold, split with respect to jet monomials.  Single
// derivatives of ansatz functions forced to vanish (up to nonvanishing
// factors) are imposed and listed first, each under the first monomial that
// produced it; the remaining equations are reduced by them and normalized so
// that the leading term of lowest derivative order is positive.
DeterminingSystem determining_system(const EquationClass& cls, const VectorField& ansatz);

// "u_x^2: ..." lines, one per equation.
std::string to_string(const DeterminingSystem& ds);

// Nonzero residuals of a concrete operator; empty iff it is a symmetry.
std::vector<DeterminingEquation> symmetry_residuals(const EquationClass& cls, const VectorField& q,
                                                   const OracleOptions& opts = {});

struct KernelConditions {
  // Derivatives of tau, xi, eta that vanish.
  std::vector<Expr> structural;  // from the determining system itself
  std::vector<Expr> conditions;  // from splitting the classifying equations
  std::vector<Expr> unresolved;  // equations outside the elimination patterns
  // Listed derivatives of the coefficients of q that do not vanish.
  std::vector<Expr> violations(const VectorField& q) const;
  bool admits(const VectorField& q) const { return unresolved.empty() && violations(q).empty(); }
};

// Splits the classifying equations with respect to the arbitrary elements
// and their derivatives and eliminates single-unknown equations.
KernelConditions kernel_conditions(const EquationClass& cls);

// ---- equivalence transformations ----

struct InvarianceReport {
  bool passed = true;
  std::vector<std::pair<std::string, Expr>> residuals;  // nonzero ones only
};

// Joint invariance of Delta = 0 and the auxiliary conditions under y, whose
// arbitrary-element components may involve the arbitrary elements.
InvarianceReport equiv_invariance_check(const VectorField& y, const EquationClass& cls,
                                        const OracleOptions& opts = {});

// Direct method for t~ = T(t), x~ = X(t,x), u~ = U(t,x,u) on the class
// u_t = f u_x^2 + g u_xx, with ftilde, gtilde the transformed arbitrary
// elements at (X, U).
struct AdmissibleSplit {
  DeterminingSystem equations;   // coefficients of u_xx, u_x^2, u_x, 1
  std::vector<Expr> vanishing;   // derivatives of T, X, U forced to vanish
  std::vector<Expr> unresolved;
};

AdmissibleSplit admissible_split(const EquationClass& cls);

// ---- invariant surface conditions ----

// xi f_x + eta f_u - phi (or the same for g), in f(x,u), g(x,u).
struct IscEquation {
  std::string label;  // "f" or "g", suffixed with the basis index
  Expr lhs;
};

std::vector<IscEquation> isc_system(const Basis& s);

struct IscResult {
  bool passed = true;
  std::vector<std::pair<std::string, Expr>> residuals;  // nonzero ones only
};

// Substitutes (f0, g0), expressions in x and u, into isc_system(s).
// Throws DomainError when g0 vanishes identically.
IscResult isc_check(const Basis& s, const Expr& f0, const Expr& g0, const OracleOptions& opts = {});

// ---- classification tables ----

struct ClassificationRow {
  int table = 0;
  std::string case_label;
  std::string mode;  // "both", "corrected" or "uncorrected"
  Expr f, g;
  CanonicalSubalgebra subalgebra;
  std::vector<VectorField> operators;
  std::vector<std::string> constraints;
  std::vector<std::string> adjustments;
};

// Two rows whose arbitrary elements agree after parameter substitution.
struct Coincidence {
  std::string mode;
  std::string description;
  int table = 0, with_table = 0;
  std::string case_label, with_case;
  std::map<std::string, Expr> substitute, with_substitute;
};

// Operators admitted by a specific member beyond its row.
struct ExtraSymmetry {
  std::string mode;
  std::string description;
  Expr f, g;
  std::vector<int> tables;
  std::vector<VectorField> operators;
};

struct RowDatabase {
  std::vector<FunctionSignature> functions;  // ftilde, gtilde
  std::vector<ClassificationRow> rows;
  std::vector<Coincidence> coincidences;
  std::vector<ExtraSymmetry> extras;
  const ClassificationRow* find(int table, const std::string& case_label, bool uncorrected) const;
};

// Throws Error on malformed input.
RowDatabase parse_rows(std::string_view json_text);
const RowDatabase& builtin_rows();

struct RowReport {
  int table = 0;
  std::string case_label;
  bool isc = false;
  bool symmetry = false;
  bool projection = false;  // operators are projections of the lifted basis
  bool kernel = false;      // dt stays a symmetry
  std::vector<std::string> residuals;
  std::vector<std::string> adjustments;
  bool passed() const { return isc && symmetry && projection && kernel; }
};

struct FindingReport {
  std::string description;
  bool detected = false;
  std::string detail;
};

struct VerificationReport {
  std::string table_id;
  bool uncorrected = false;
  std::vector<RowReport> rows;
  std::vector<FindingReport> findings;
  int passed_rows() const;
  bool passed() const;
};

// table_id is "1", "2", "3" or "all"; throws Error otherwise.
VerificationReport verify_table(const std::string& table_id, bool uncorrected = false,
                                const OracleOptions& opts = {}, const RowDatabase& db = builtin_rows());

std::string to_text(const VerificationReport& r);
std::string to_latex(const VerificationReport& r);
std::string to_json(const VerificationReport& r);

}  // namespace lieprelim
