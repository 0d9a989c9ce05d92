#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lieprelim/calculus.hpp"
#include "lieprelim/expr.hpp"

namespace lieprelim::detail {

// Rule-based elimination for systems in a few unknown functions: an equation
// c * D^k(F) * (nonvanishing factors) = 0 is turned into the rule D^k(F) = 0.
struct Eliminator {
  std::set<std::string> unknowns;
  std::vector<Expr> nonvanishing;
  std::vector<VanishingDerivative> rules;

  bool is_unknown(const Expr& e) const { return e.is_function() && unknowns.count(e.name()) > 0; }
  bool is_nonvanishing(const Expr& factor) const;
  // The unknown atom when `e` has the single-unknown shape.
  std::optional<Expr> single_unknown(const Expr& e) const;
  bool covered(const Expr& atom) const;
  void impose(const Expr& atom);
  Expr reduce(const Expr& e) const { return apply_vanishing(e, rules); }
  // Imposes single-unknown equations until none is left; returns the atoms
  // in discovery order and leaves the other nonzero equations in `rest`.
  std::vector<Expr> eliminate(const std::vector<Expr>& eqs, std::vector<Expr>& rest);
};

// Drops atoms dominated by another atom of the same function.
std::vector<Expr> minimal_atoms(const std::vector<Expr>& atoms);

// Fixes the overall sign: the first term of lowest unknown-derivative order
// gets a positive coefficient.
Expr normalize_sign(const Expr& e, const std::set<std::string>& unknowns);

// Arbitrary-element applications and derivatives occurring in e.
std::vector<Expr> element_atoms(const Expr& e, const std::set<std::string>& names);

// Coefficients of e as a polynomial in the given atoms; e itself when it is
// not polynomial in them.
std::vector<Expr> split_by_atoms(const Expr& e, const std::vector<Expr>& atoms);

}  // namespace lieprelim::detail
