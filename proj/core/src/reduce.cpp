#include "reduce.hpp"

#include <algorithm>

namespace lieprelim::detail {

bool Eliminator::is_nonvanishing(const Expr& factor) const {
  auto [base, expo] = as_power(factor);
  if (base.kind() == Kind::Exp) return true;
  return std::any_of(nonvanishing.begin(), nonvanishing.end(), [&](const Expr& n) { return n == base; });
}

std::optional<Expr> Eliminator::single_unknown(const Expr& e) const {
  auto terms = terms_of(e);
  if (terms.size() != 1) return std::nullopt;
  std::optional<Expr> atom;
  for (const auto& f : factors_of(terms[0])) {
    if (is_nonvanishing(f)) continue;
    auto [base, expo] = as_power(f);
    if (!is_unknown(base) || atom || !expo.is_integer() || expo.value() <= 0) return std::nullopt;
    atom = base;
  }
  return atom;
}

bool Eliminator::covered(const Expr& atom) const {
  return std::any_of(rules.begin(), rules.end(), [&](const VanishingDerivative& r) { return r.matches(atom); });
}

void Eliminator::impose(const Expr& atom) { rules.push_back({atom.name(), atom.derivs()}); }

std::vector<Expr> Eliminator::eliminate(const std::vector<Expr>& eqs, std::vector<Expr>& rest) {
  std::vector<Expr> found;
  std::vector<Expr> pool = eqs;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Expr> next;
    for (const auto& q : pool) {
      Expr r = reduce(q);
      if (r.is_zero()) continue;
      if (auto a = single_unknown(r); a && !covered(*a)) {
        impose(*a);
        found.push_back(*a);
        changed = true;
        continue;
      }
      next.push_back(r);
    }
    pool = std::move(next);
  }
  rest.clear();
  for (const auto& q : pool) {
    Expr r = reduce(q);
    if (!r.is_zero()) rest.push_back(r);
  }
  return found;
}

std::vector<Expr> minimal_atoms(const std::vector<Expr>& atoms) {
  std::vector<Expr> out;
  for (const auto& a : atoms) {
    bool dominated = std::any_of(atoms.begin(), atoms.end(), [&](const Expr& b) {
      return !(a == b) && VanishingDerivative{b.name(), b.derivs()}.matches(a);
    });
    if (!dominated && std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  return out;
}

Expr normalize_sign(const Expr& e, const std::set<std::string>& unknowns) {
  auto terms = terms_of(e);
  if (terms.empty()) return e;
  int best = -1;
  int best_order = 1 << 20;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::vector<Expr> fns;
    collect_functions(terms[i], fns);
    for (const auto& f : fns) {
      if (unknowns.count(f.name()) && f.derivative_order() < best_order) {
        best_order = f.derivative_order();
        best = static_cast<int>(i);
      }
    }
  }
  const Expr& lead = terms[best < 0 ? 0 : static_cast<std::size_t>(best)];
  return split_coefficient(lead).first < 0 ? -e : e;
}

std::vector<Expr> element_atoms(const Expr& e, const std::set<std::string>& names) {
  std::vector<Expr> fns;
  collect_functions(e, fns);
  std::vector<Expr> out;
  for (const auto& f : fns) {
    if (names.count(f.name()) && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), ExprLess{});
  return out;
}

std::vector<Expr> split_by_atoms(const Expr& e, const std::vector<Expr>& atoms) {
  if (atoms.empty()) return {e};
  try {
    std::vector<Expr> out;
    for (auto& [m, c] : collect(e, atoms)) out.push_back(c);
    return out;
  } catch (const Error&) {
    return {e};
  }
}

}  // namespace lieprelim::detail
