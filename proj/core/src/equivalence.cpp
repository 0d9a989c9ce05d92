#include "lieprelim/format.hpp"
#include "lieprelim/verify.hpp"
#include "reduce.hpp"

namespace lieprelim {

namespace {

std::set<std::string> element_names(const EquationClass& cls) {
  std::set<std::string> out;
  for (const auto& s : cls.arbitrary_elements) out.insert(s.name);
  return out;
}

void check_split(const std::string& label, const Expr& e, const std::set<std::string>& elements,
                 const OracleOptions& opts, InvarianceReport& r) {
  auto atoms = detail::element_atoms(e, elements);
  for (const auto& c : detail::split_by_atoms(e, atoms)) {
    if (is_identically_zero(c, opts)) continue;
    r.passed = false;
    r.residuals.emplace_back(label, c);
  }
}

}  // namespace

InvarianceReport equiv_invariance_check(const VectorField& y, const EquationClass& cls, const OracleOptions& opts) {
  InvarianceReport r;
  std::vector<std::string> coords = extended_coordinates(cls);
  VectorField ye = y.extend(coords);
  ProlongedField pf = prolong(ye, cls);
  std::set<std::string> elements = element_names(cls);

  Expr main = on_manifold(apply(pf, cls.delta, cls), cls);
  for (const auto& q : split_determining(main).equations) {
    check_split("Delta " + to_string(q.monomial), q.lhs, elements, opts, r);
  }
  for (const auto& [name, value] : pf.auxiliary) check_split("S " + name, value, elements, opts, r);
  return r;
}

AdmissibleSplit admissible_split(const EquationClass& cls) {
  Expr T = Expr::function("T", {"t"});
  Expr X = Expr::function("X", {"t", "x"});
  Expr U = Expr::function("U", {"t", "x", "u"});
  JetSpace js;
  Expr DxU = total_derivative(U, "x", js);
  Expr Tt = diff(T, "t"), Xt = diff(X, "t"), Xx = diff(X, "x");
  Expr ut = (total_derivative(U, "t", js) - Xt / Xx * DxU) / Tt;
  Expr ux = DxU / Xx;
  Expr uxx = total_derivative(ux, "x", js) / Xx;

  // The image equation in the old variables, with tilde elements at (X, U).
  Bindings b;
  for (const auto& s : cls.arbitrary_elements) {
    b.bind_function(s.name, s.args, sym(s.name + "tilde"));
  }
  b.bind("u", U).bind("u_x", ux).bind("u_xx", uxx);
  Expr image = ut - substitute(cls.rhs, b);

  AdmissibleSplit out;
  out.equations = split_determining(on_manifold(image, cls));

  detail::Eliminator el;
  el.unknowns = {"T", "X", "U"};
  el.nonvanishing = cls.nonvanishing;
  el.nonvanishing.insert(el.nonvanishing.end(), {Tt, Xx, diff(U, "u")});
  std::vector<Expr> tildes;
  for (const auto& s : cls.arbitrary_elements) tildes.push_back(sym(s.name + "tilde"));

  // The u_x and 1 equations hold for all values of the tilde elements.
  std::vector<Expr> pool;
  for (const char* m : {"u_x", "1"}) {
    const DeterminingEquation* q = out.equations.find(m == std::string("1") ? Expr(1) : sym(m));
    if (!q) continue;
    for (const auto& [mono, c] : collect(q->lhs, tildes)) pool.push_back(c);
  }
  std::vector<Expr> rest;
  std::vector<Expr> found = el.eliminate(pool, rest);

  // The u_xx equation fixes a tilde element that cannot depend on t.
  if (const DeterminingEquation* q = out.equations.find(sym("u_xx"))) {
    auto parts = collect(q->lhs, tildes);
    if (parts.size() == 2 && parts[0].first.is_symbol() && parts[1].first.is_one()) {
      Expr solved = -parts[1].second / parts[0].second;
      Expr dt = el.reduce(diff(solved, "t"));
      if (auto a = el.single_unknown(dt); a && !el.covered(*a)) {
        el.impose(*a);
        found.push_back(*a);
      } else if (!dt.is_zero()) {
        rest.push_back(dt);
      }
    }
  }
  out.vanishing = detail::minimal_atoms(found);
  out.unresolved = std::move(rest);
  return out;
}

}  // namespace lieprelim
