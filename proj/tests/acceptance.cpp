// Acceptance run: one line per criterion.
//
//   acceptance [--expect-red 10,11]
//
// Exits 0 when the criteria that fail are exactly the expected-red ones.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lieprelim/classify.hpp"
#include "lieprelim/format.hpp"
#include "lieprelim/numeric.hpp"
#include "lieprelim/verify.hpp"

using namespace lieprelim;
using E = EquivAlgebraElement;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Expr P(const char* s, const Environment& env = {}) { return parse(s, env); }

std::string joined(const std::vector<Expr>& es) {
  std::vector<std::string> s;
  for (const auto& e : es) s.push_back(to_string(e));
  std::sort(s.begin(), s.end());
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return out;
}

Rational rnd(std::mt19937_64& rng, int lo, int hi, int den = 1) {
  Rational r(std::uniform_int_distribution<int>(lo * den, hi * den)(rng), den);
  r.canonicalize();
  return r;
}

Rational nonzero(std::mt19937_64& rng, int lo, int hi, int den = 1) {
  for (;;) {
    Rational r = rnd(rng, lo, hi, den);
    if (r != 0) return r;
  }
}

Expr catalog_h(std::mt19937_64& rng) {
  Expr u = sym("u"), c = Expr(nonzero(rng, -3, 3, 2));
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0:
      return 0;
    case 1:
      return c;
    case 2:
      return c * u + Expr(rnd(rng, -2, 2));
    case 3:
      return c * exp(Expr(nonzero(rng, -2, 2, 2)) * u);
    default: {
      Rational k = nonzero(rng, -2, 3, 2);
      if (k == 1) k = 2;
      return c * pow(u, Expr(k));
    }
  }
}

Outcome determining_exactness() {
  Outcome o;
  std::string got = to_string(determining_system(generalized_diffusion_class(), generic_ansatz()));
  std::string want = read_file(std::string(LIEPRELIM_TEST_DATA) + "/golden/determining_genDiff.txt");
  o.require(got == want, "output differs from the golden file");
  o.detail = o.pass ? "7 equations, byte-identical to the golden file" : o.detail;
  return o;
}

Outcome kernel() {
  Outcome o;
  KernelConditions k = kernel_conditions(generalized_diffusion_class());
  std::string conds = joined(k.conditions);
  o.require(conds == "Diff(tau,t), eta, xi", "conditions {" + conds + "}");
  o.require(k.unresolved.empty(), "unresolved equations");
  auto field = [](const char* s) { return parse_field(s, base_coordinates()); };
  o.require(k.admits(field("dt")), "dt rejected");
  o.require(!k.admits(field("dx")), "dx admitted");
  o.require(!k.admits(field("u*du")), "u*du admitted");
  if (o.pass) o.detail = "{xi = 0, eta = 0, tau_t = 0}; dt passes, dx and u*du fail";
  return o;
}

Outcome equivalence_algebra() {
  Outcome o;
  EquationClass cls = generalized_diffusion_class();
  Environment env{{"h", {"u"}}};
  int passed = 0;
  for (const auto& v : {E::dt(), E::dx(), E::Dt(), E::Dx(), E::G(1), E::G(sym("u")), E::G(P("u^2")),
                        E::G(P("exp(u)")), E::G(env.apply("h"))}) {
    bool ok = equiv_invariance_check(v.to_field(), cls).passed;
    o.require(ok, to_string(v) + " fails");
    passed += ok;
  }
  Environment ab{{"a", {"x"}}, {"b", {"x"}}};
  auto coords = extended_coordinates(cls);
  InvarianceReport rb = equiv_invariance_check(parse_field("b*du", coords, ab), cls);
  InvarianceReport ra = equiv_invariance_check(parse_field("a*dx + 2*f*a*df + g*Diff(a,x)*dg", coords, ab), cls);
  o.require(!rb.passed && !rb.residuals.empty(), "b(x)du passes");
  o.require(!ra.passed && !ra.residuals.empty(), "a(x) operator passes");
  if (o.pass) {
    o.detail = std::to_string(passed) + " generators pass; b(x)du fails with " + std::to_string(rb.residuals.size()) +
               " residuals, a(x)dx + ... with " + std::to_string(ra.residuals.size());
  }
  return o;
}

Outcome equivalence_group() {
  Outcome o;
  EquationClass cls = generalized_diffusion_class();
  AdmissibleSplit s = admissible_split(cls);
  o.require(s.equations.size() == 4 && s.unresolved.empty(), "admissible system has the wrong shape");

  Environment env{{"T", {"t"}}, {"X", {"t", "x"}}, {"U", {"t", "x", "u"}}, {"f", {"x", "u"}}, {"g", {"x", "u"}}};
  auto eq = [&](const char* m) {
    const DeterminingEquation* q = s.equations.find(parse(m));
    return q ? q->lhs : Expr(1);
  };
  std::map<std::string, std::string> reference{
      {"u_xx", "Diff(U,u)/Diff(X,x)^2*(Diff(X,x)^2*g/Diff(T,t) - gtilde)"},
      {"u_x^2", "f*Diff(U,u)/Diff(T,t) - (ftilde*Diff(U,u)^2/Diff(X,x)^2 + gtilde*Diff(U,u,u)/Diff(X,x)^2)"},
      {"u_x",
       "-Diff(X,t)*Diff(U,u)/(Diff(T,t)*Diff(X,x)) - (gtilde/Diff(X,x)^2*(2*Diff(U,x,u) - "
       "Diff(X,x,x)/Diff(X,x)*Diff(U,u)) + 2*ftilde*Diff(U,x)*Diff(U,u)/Diff(X,x)^2)"},
      {"1",
       "(Diff(U,t) - Diff(X,t)/Diff(X,x)*Diff(U,x))/Diff(T,t) - (ftilde*(Diff(U,x)/Diff(X,x))^2 + "
       "gtilde/Diff(X,x)^2*(Diff(U,x,x) - Diff(X,x,x)/Diff(X,x)*Diff(U,x)))"}};
  for (const auto& [m, text] : reference) {
    o.require(is_identically_zero(eq(m.c_str()) - parse(text, env)), "equation at " + m + " differs");
  }
  std::string vanishing = joined(s.vanishing);
  o.require(vanishing == "Diff(T,t,t), Diff(U,t), Diff(U,x), Diff(X,t), Diff(X,x,x)", "vanishing {" + vanishing + "}");

  // round trip: images of a class element satisfy the admissible system
  Expr x = sym("x"), u = sym("u");
  Expr f0 = x * u + exp(u), g0 = 1 + x * x;
  OracleOptions opts;
  opts.tolerance = 1e-7;
  for (const auto& p : {EquivTransform{3, Rational(1, 2), -1, 2, UFunction::exponential(2)},
                        EquivTransform{0, -1, 5, Rational(3, 2), UFunction::affine(-2, 7)},
                        EquivTransform{1, 2, 0, -1, UFunction::power(3)}}) {
    auto [ft, gt] = transform_class_element(p, f0, g0);
    o.require(!contains_symbol(ft, "t") && !contains_symbol(gt, "t"), "image depends on t");
    Bindings at;
    at.bind("x", p.B1 * x + p.B0).bind("u", p.U.forward);
    Bindings b;
    b.bind_function("T", {"t"}, p.A1 * sym("t") + p.A0)
        .bind_function("X", {"t", "x"}, p.B1 * x + p.B0)
        .bind_function("U", {"t", "x", "u"}, p.U.forward);
    b.bind_function("f", {"x", "u"}, f0).bind_function("g", {"x", "u"}, g0);
    b.bind("ftilde", substitute(ft, at)).bind("gtilde", substitute(gt, at));
    for (const auto& q : s.equations.equations) {
      o.require(is_identically_zero(substitute(q.lhs, b), opts), "round trip fails at " + to_string(q.monomial));
    }
  }

  Expr fr = x * u, gr = exp(u) + x;
  Bindings flip_x, flip_u;
  flip_x.bind("x", -x);
  flip_u.bind("u", -u);
  auto [f1, g1] = transform_class_element(reflection_t(), fr, gr);
  auto [f2, g2] = transform_class_element(reflection_x(), fr, gr);
  auto [f3, g3] = transform_class_element(reflection_u(), fr, gr);
  o.require(is_identically_zero(f1 + fr) && is_identically_zero(g1 + gr), "I_t");
  o.require(is_identically_zero(f2 - substitute(fr, flip_x)) && is_identically_zero(g2 - substitute(gr, flip_x)), "I_x");
  o.require(is_identically_zero(f3 + substitute(fr, flip_u)) && is_identically_zero(g3 - substitute(gr, flip_u)), "I_u");
  if (o.pass) o.detail = "4 equations match, {X_t, X_xx, U_x, U_t, T_tt} = 0, round trip and I_t, I_x, I_u hold";
  return o;
}

Outcome burgers() {
  Outcome o;
  auto [f1, g1] = transform_class_element(EquivTransform::gauge(UFunction::exponential(1)), 1, 1);
  o.require(f1.is_zero() && g1 == Expr(1), "(1,1) -> (" + to_string(f1) + "," + to_string(g1) + ")");
  Environment env{{"g", {"x", "u"}}};
  Expr c = sym("c");
  auto [f2, g2] = transform_class_element(EquivTransform::gauge(UFunction::exponential(c)), c * env.apply("g"),
                                          env.apply("g"));
  o.require(is_identically_zero(f2), "f = c g maps to f~ = " + to_string(f2));
  o.require(!is_identically_zero(g2), "g~ vanishes");
  if (o.pass) o.detail = "(1,1) -> (0,1) under u~ = exp(u); f = c*g -> f~ = 0 under u~ = exp(c*u)";
  return o;
}

Outcome algebra_structure() {
  Outcome o;
  std::vector<E> finite{E::dt(), E::dx(), E::Dt(), E::Dx()};
  std::vector<E> gs{E::G(1), E::G(P("u")), E::G(P("u^2")), E::G(P("exp(u)"))};
  std::set<std::string> families;
  std::vector<E> all = finite;
  all.insert(all.end(), gs.begin(), gs.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (bracket(all[i], all[j]).is_zero()) continue;
      bool gg = i >= finite.size() && j >= finite.size();
      families.insert(gg ? "[G,G]" : to_string(all[i]) + "," + to_string(all[j]));
    }
  }
  o.require(families == std::set<std::string>{"dt,Dt", "dx,Dx", "[G,G]"}, "nonzero bracket families differ");
  o.require(bracket(E::dx(), E::Dx()) == E::dx() && bracket(E::dt(), E::Dt()) == E::dt() &&
                bracket(E::G(1), E::G(P("u"))) == E::G(1),
            "structure constants");
  for (const auto& a : all) {
    for (const auto& b : all) {
      for (const auto& c : all) {
        E j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        if (!j.is_zero()) o.require(false, "Jacobi fails");
      }
    }
  }
  Expr eps = sym("epsilon");
  for (const auto& [v, w] : std::vector<std::pair<E, E>>{
           {E::dx(), E::Dx()}, {E::dt(), E::Dt()}, {E::G(1), E::G(P("u"))}, {E::G(1), E::G(P("u^2"))}}) {
    auto series = adjoint_series(v, w, eps, 8);
    o.require(series.terminated && equivalent(series.value, adjoint_closed(v, w, eps)),
              "adjoint of " + to_string(w) + " by " + to_string(v));
  }
  double worst = 0;
  auto sx = adjoint_series(E::Dx(), E::dx(), eps, 12);
  auto st = adjoint_series(E::Dt(), E::dt(), eps, 12);
  auto cx = adjoint_closed(E::Dx(), E::dx(), eps);
  auto ct = adjoint_closed(E::Dt(), E::dt(), eps);
  for (double e : {-1.0, -0.5, 0.5, 1.0}) {
    worst = std::max(worst, std::fabs(eval_numeric(sx.value.a3 - cx.a3, {{"epsilon", e}})));
    worst = std::max(worst, std::fabs(eval_numeric(st.value.a0 - ct.a0, {{"epsilon", e}})));
  }
  o.require(worst < 1e-6, "scaling series off by " + std::to_string(worst));

  Expr B0 = sym("B0"), B1 = sym("B1"), A0 = sym("A0"), A1 = sym("A1");
  o.require(push_forward(EquivTransform::translation_x(B0), E::Dx()) == E::Dx() - B0 * E::dx() &&
                push_forward(EquivTransform::scaling_x(B1), E::dx()) == B1 * E::dx() &&
                push_forward(EquivTransform::translation_t(A0), E::Dt()) == E::Dt() - A0 * E::dt() &&
                push_forward(EquivTransform::scaling_t(A1), E::dt()) == A1 * E::dt() &&
                push_forward(EquivTransform::gauge(UFunction::exponential(1)), E::G(1)) == E::G(P("u")),
            "push-forward table");
  if (o.pass) {
    std::ostringstream os;
    os << "3 nonzero families, Jacobi holds, terminating series exact, scaling series within " << std::scientific
       << std::setprecision(1) << worst << ", push-forward table reproduced";
    o.detail = os.str();
  }
  return o;
}

Outcome optimal_lists() {
  Outcome o;
  std::mt19937_64 rng(12);
  std::set<std::string> seen1, seen2;
  for (int i = 0; i < 1000; ++i) {
    E v;
    int pattern = std::uniform_int_distribution<int>(0, 3)(rng);
    v.a1 = pattern == 0 ? Expr(rnd(rng, -5, 5)) : Expr(0);
    v.a2 = pattern <= 1 ? Expr(rnd(rng, -5, 5)) : Expr(0);
    v.a3 = pattern <= 2 ? Expr(rnd(rng, -5, 5)) : Expr(0);
    v.a0 = Expr(rnd(rng, -5, 5));
    v.h = catalog_h(rng);
    if (v.a1.is_zero() && v.a2.is_zero() && v.a3.is_zero() && v.h.is_zero()) v.h = 1;
    auto n = normalize_1d(v);
    seen1.insert(n.result.list_id);
    if (!in_canonical_range(n.result) || !replay(n.witness, {v})) o.require(false, "1D input " + to_string(v));
  }
  o.require(seen1.size() == 4, "1D forms reached: " + std::to_string(seen1.size()));

  auto bit = [&] { return Expr(std::uniform_int_distribution<int>(0, 1)(rng)); };
  auto real = [&] { return Expr(rnd(rng, -3, 3, 2)); };
  for (int i = 0; i < 300; ++i) {
    std::string id = "2D-" + std::to_string(i % 8 + 1);
    std::map<std::string, Expr> params;
    if (id == "2D-1") {
      Expr d = bit();
      params = {{"delta", d}, {"delta_hat", d.is_one() ? real() : bit()}};
    } else if (id == "2D-2") {
      params = {{"a", real()}};
    } else if (id == "2D-3") {
      params = {{"a", real()}, {"delta", bit()}};
    } else if (id == "2D-4") {
      params = {{"delta", bit()}, {"delta_tilde", bit()}};
    } else if (id == "2D-5") {
      params = {{"a", real()}, {"b", real()}};
    } else if (id == "2D-6") {
      params = {{"delta", bit()}, {"b", real()}};
    } else if (id == "2D-7") {
      params = {{"delta", bit()}};
    }
    CanonicalSubalgebra c = canonical(id, params);
    Basis s = c.basis;
    EquivTransform T =
        EquivTransform::translation_x(Expr(rnd(rng, -3, 3)))
            .after(EquivTransform::scaling_x(Expr(nonzero(rng, -3, 3))))
            .after(EquivTransform::gauge(UFunction::affine(Expr(nonzero(rng, -2, 2, 2)), Expr(rnd(rng, -2, 2)))));
    for (auto& v : s) v = push_forward(T, v);
    Rational m00, m01, m10, m11;
    do {
      m00 = rnd(rng, -3, 3);
      m01 = rnd(rng, -3, 3);
      m10 = rnd(rng, -3, 3);
      m11 = rnd(rng, -3, 3);
    } while (m00 * m11 - m01 * m10 == 0);
    E v1 = Expr(m00) * s[0] + Expr(m01) * s[1];
    E v2 = Expr(m10) * s[0] + Expr(m11) * s[1];
    v1.a0 = Expr(rnd(rng, -2, 2));
    auto n = normalize_2d(v1, v2);
    seen2.insert(n.result.list_id);
    bool params_ok = true;
    for (const auto& [k, val] : c.parameters) params_ok = params_ok && n.result.parameters.at(k) == val;
    if (n.result.list_id != id || !params_ok || !replay(n.witness, {v1, v2})) o.require(false, "2D input " + id);
  }
  o.require(seen2.size() == 8, "2D forms reached: " + std::to_string(seen2.size()));

  for (const char* id : {"1D-1", "1D-2", "1D-3", "1D-4"}) {
    auto n = normalize_1d(canonical(id, {{"a", 2}, {"delta", 1}, {"delta_tilde", 1}}).basis[0]);
    o.require(n.witness.chain.empty() && n.result.list_id == id, std::string(id) + " is not a fixed point");
  }
  for (int k = 1; k <= 8; ++k) {
    std::string id = "2D-" + std::to_string(k);
    auto c = canonical(id, {{"a", 3}, {"b", 2}, {"delta", 1}, {"delta_tilde", 1}, {"delta_hat", 5}});
    auto n = normalize_2d(c.basis[0], c.basis[1]);
    o.require(n.witness.chain.empty() && n.result.list_id == id, id + " is not a fixed point");
  }
  if (o.pass) o.detail = "1000 1D inputs reach 4 forms, 300 2D inputs reach 8 forms, witnesses replay, fixed points hold";
  return o;
}

Outcome appropriateness_checks() {
  Outcome o;
  auto dt = appropriateness({E::Dt()});
  o.require(dt.contains_Dt && !dt.passed(), "D^t not excluded");
  auto three = appropriateness({E::G(1), E::G(P("u")), E::G(P("u^2"))});
  o.require(three.m == 3 && !three.passed(), "m_s = 3 accepted");
  o.require(wronskian({1, P("u"), P("u^2")}) == Expr(2), "Wronskian of 1, u, u^2");
  auto c5 = appropriateness({parse_element("Dx + Dt"), E::G(1), E::G(P("u"))});
  o.require(c5.m == 2 && c5.pure_g_intersection, "m_s = 2 with a mixed intersection");

  std::vector<std::pair<CanonicalSubalgebra, std::pair<Expr, Expr>>> hd{
      {canonical("HD-1"), {P("3*exp(u)"), P("exp(u)")}},
      {canonical("HD-2", {{"b", P("5/2")}}), {0, P("7")}},
      {canonical("HD-3", {{"a", P("1/2")}}), {0, P("x^(3/2)")}},
      {canonical("HD-4", {{"delta", 1}}), {0, P("exp(x)")}},
      {canonical("HD-5"), {0, 1}}};
  o.require(higher_dimensional_list().size() == 5, "five higher-dimensional subalgebras");
  int ok = 0;
  for (const auto& [s, cand] : hd) {
    auto rep = appropriateness(s.basis, cand);
    bool pass = is_closed(s.basis) && rep.passed() && rep.m <= 2 && rep.dimension <= 4 &&
                (rep.m != 2 || rep.pure_g_intersection);
    o.require(pass, s.list_id + " fails");
    ok += pass;
  }
  if (o.pass) o.detail = "D^t excluded, m_s <= 2 via the Wronskian, " + std::to_string(ok) + "/5 HD subalgebras pass";
  return o;
}

Outcome tables() {
  Outcome o;
  VerificationReport r = verify_table("all");
  o.require(r.passed() && r.rows.size() == 17, std::to_string(r.passed_rows()) + "/" + std::to_string(r.rows.size()));
  auto find = [&](int t, const char* c) -> const RowReport* {
    for (const auto& row : r.rows) {
      if (row.table == t && row.case_label == c) return &row;
    }
    return nullptr;
  };
  const RowReport* burgers = find(3, "1");
  const RowReport* heat = find(3, "4");
  o.require(burgers && burgers->isc && burgers->symmetry, "three-operator row");
  o.require(heat && heat->isc && heat->symmetry, "heat row");

  VerificationReport u = verify_table("all", true);
  auto detected = [&](const std::string& prefix) {
    return std::any_of(u.findings.begin(), u.findings.end(),
                       [&](const FindingReport& f) { return f.detected && f.description.rfind(prefix, 0) == 0; });
  };
  o.require(detected("Table 1 Case 3 with delta = 0 coincides with Table 2 Case 3b"), "Table 1 Case 3 duplicate");
  o.require(detected("Table 2 Case 7 with delta = 0 admits 2*t*dt + x*dx"), "Case 7 extra operator");
  if (o.pass) {
    o.detail = "17/17 corrected rows pass; uncorrected run detects " + std::to_string(u.findings.size()) + " findings";
  }
  return o;
}

const char* kLinearHead = "tau*dt + xi*dx + eta1*u*du + ";

Outcome cross_class() {
  Outcome o;
  EquationClass lin = linear_class();
  Environment env{{"tau", {"t"}}, {"xi", {"t", "x"}}, {"eta1", {"t", "x"}}};
  auto coords = extended_coordinates(lin);
  std::string stated = std::string(kLinearHead) +
                       "(2*Diff(xi,x) - Diff(tau,t))*dA"
                       " + ((Diff(xi,x) - Diff(tau,t))*B - 2*Diff(eta1,x)*A - Diff(xi,t))*dB"
                       " + (Diff(eta1,t) - A*Diff(eta1,x,x) - B*Diff(eta1,x) - C*Diff(xi,t))*dC";
  std::string corrected = std::string(kLinearHead) +
                          "(2*Diff(xi,x) - Diff(tau,t))*A*dA"
                          " + ((Diff(xi,x) - Diff(tau,t))*B - 2*Diff(eta1,x)*A + A*Diff(xi,x,x) - Diff(xi,t))*dB"
                          " + (Diff(eta1,t) - A*Diff(eta1,x,x) - B*Diff(eta1,x) - C*Diff(tau,t))*dC";
  InvarianceReport rs = equiv_invariance_check(parse_field(stated, coords, env), lin);
  InvarianceReport rc = equiv_invariance_check(parse_field(corrected, coords, env), lin);
  o.pass = rs.passed;
  o.detail = std::string("stated generator ") + (rs.passed ? "passes" : "fails with " + std::to_string(rs.residuals.size()) + " residuals");
  o.detail += std::string("; corrected generator (A*dA, +A*xi_xx in dB, -C*tau_t in dC) ") + (rc.passed ? "passes" : "fails");
  return o;
}

Outcome commutator_instance() {
  Outcome o;
  auto field = [](const char* s) { return parse_field(s, base_coordinates()); };
  VectorField c = commutator(field("dx"), field("x^2*dx - 3*x*u*du"));
  VectorField stated = field("2*x*dx - 3*x*u*du");
  bool outside = !in_span({field("dt"), field("dx"), field("2*t*dt + x*dx")}, c).has_value();
  o.require(c == stated, "computed " + to_string(c) + ", stated " + to_string(stated));
  o.require(outside, "commutator lies in the span");
  o.detail += std::string(o.detail.empty() ? "" : "; ") + "result outside span{dt, dx, 2*t*dt + x*dx}: " + (outside ? "yes" : "no");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_red;
  app.add_option("--expect-red", expect_red, "Criteria known to fail as stated")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"determining system exactness", determining_exactness},
      {"kernel", kernel},
      {"equivalence algebra", equivalence_algebra},
      {"equivalence group", equivalence_group},
      {"Burgers linearization", burgers},
      {"algebra structure", algebra_structure},
      {"optimal lists", optimal_lists},
      {"appropriateness", appropriateness_checks},
      {"tables", tables},
      {"cross-class generality", cross_class},
      {"diffusion commutator instance", commutator_instance},
  };

  std::set<int> red;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    int id = static_cast<int>(i) + 1;
    if (!o.pass) red.insert(id);
    std::cout << (o.pass ? "PASS " : "FAIL ") << std::setw(2) << id << " " << criteria[i].first << ": " << o.detail
              << "\n";
  }
  std::set<int> expected(expect_red.begin(), expect_red.end());
  if (red != expected) {
    std::cout << "red criteria differ from the expected set\n";
    return 1;
  }
  std::cout << (11 - red.size()) << "/11 criteria pass";
  if (!red.empty()) std::cout << ", " << red.size() << " expected red";
  std::cout << "\n";
  return 0;
}
