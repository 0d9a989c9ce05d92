#include <algorithm>
#include <sstream>

#include "lieprelim/format.hpp"
#include "lieprelim/verify.hpp"
#include "reduce.hpp"

namespace lieprelim {

namespace {

const std::vector<std::string> kTxu{"t", "x", "u"};

// Unknown functions of the ansatz that are not arbitrary elements.
std::set<std::string> ansatz_unknowns(const VectorField& q, const EquationClass& cls) {
  std::set<std::string> out;
  for (const auto& c : base_coordinates()) {
    std::vector<Expr> fns;
    collect_functions(q.coefficient(c), fns);
    for (const auto& f : fns) {
      if (!cls.element(f.name())) out.insert(f.name());
    }
  }
  return out;
}

std::set<std::string> element_names(const EquationClass& cls) {
  std::set<std::string> out;
  for (const auto& s : cls.arbitrary_elements) out.insert(s.name);
  return out;
}

}  // namespace

VectorField generic_ansatz() {
  return VectorField::base(Expr::function("tau", kTxu), Expr::function("xi", kTxu), Expr::function("eta", kTxu));
}

DeterminingSystem determining_system(const EquationClass& cls, const VectorField& ansatz) {
  Expr full = on_manifold(apply(prolong(ansatz, cls), cls.delta, cls), cls);
  detail::Eliminator el;
  el.unknowns = ansatz_unknowns(ansatz, cls);
  el.nonvanishing = cls.nonvanishing;

  DeterminingSystem out;
  DeterminingSystem split;
  for (bool changed = true; changed;) {
    changed = false;
    split = split_determining(el.reduce(full));
    for (const auto& q : split.equations) {
      auto atom = el.single_unknown(q.lhs);
      if (!atom || el.covered(*atom)) continue;
      el.impose(*atom);
      out.equations.push_back({q.monomial, *atom});
      changed = true;
    }
  }
  for (const auto& q : split.equations) {
    out.equations.push_back({q.monomial, detail::normalize_sign(q.lhs, el.unknowns)});
  }
  return out;
}

std::string to_string(const DeterminingSystem& ds) {
  std::ostringstream os;
  for (const auto& q : ds.equations) os << to_string(q.monomial) << ": " << to_string(q.lhs) << " = 0\n";
  return os.str();
}

std::vector<DeterminingEquation> symmetry_residuals(const EquationClass& cls, const VectorField& q,
                                                   const OracleOptions& opts) {
  std::vector<DeterminingEquation> out;
  for (auto& e : determining_system(cls, q).equations) {
    if (!is_identically_zero(e.lhs, opts)) out.push_back(std::move(e));
  }
  return out;
}

std::vector<Expr> KernelConditions::violations(const VectorField& q) const {
  static const std::map<std::string, std::string> coordinate{{"tau", "t"}, {"xi", "x"}, {"eta", "u"}};
  std::vector<Expr> out;
  auto check = [&](const Expr& atom) {
    auto it = coordinate.find(atom.name());
    if (it == coordinate.end()) return;
    Expr d = q.coefficient(it->second);
    for (std::size_t i = 0; i < atom.params().size(); ++i) d = diff_n(d, atom.params()[i], atom.derivs()[i]);
    if (!d.is_zero()) out.push_back(atom);
  };
  for (const auto& a : structural) check(a);
  for (const auto& a : conditions) check(a);
  return out;
}

KernelConditions kernel_conditions(const EquationClass& cls) {
  VectorField q = generic_ansatz();
  DeterminingSystem ds = determining_system(cls, q);
  detail::Eliminator el;
  el.unknowns = ansatz_unknowns(q, cls);
  el.nonvanishing = cls.nonvanishing;
  std::set<std::string> elements = element_names(cls);

  KernelConditions k;
  std::vector<Expr> pool;
  for (const auto& e : ds.equations) {
    if (auto a = el.single_unknown(e.lhs)) {
      if (!el.covered(*a)) {
        el.impose(*a);
        k.structural.push_back(*a);
      }
      continue;
    }
    for (auto& c : detail::split_by_atoms(e.lhs, detail::element_atoms(e.lhs, elements))) pool.push_back(c);
  }
  k.conditions = detail::minimal_atoms(el.eliminate(pool, k.unresolved));
  auto index = [](const Expr& a) {
    static const std::vector<std::string> order{"tau", "xi", "eta"};
    return std::find(order.begin(), order.end(), a.name()) - order.begin();
  };
  std::stable_sort(k.conditions.begin(), k.conditions.end(), [&](const Expr& a, const Expr& b) {
    if (a.derivative_order() != b.derivative_order()) return a.derivative_order() < b.derivative_order();
    return index(a) < index(b);
  });
  return k;
}

}  // namespace lieprelim
