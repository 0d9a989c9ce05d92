#include "doctest.h"

#include "corpus.hpp"
#include "lieprelim/calculus.hpp"
#include "lieprelim/format.hpp"
#include "lieprelim/jet.hpp"
#include "lieprelim/numeric.hpp"

using namespace lieprelim;

TEST_CASE("jet variable naming") {
  CHECK(JetSpace::name(1, 2) == "u_txx");
  CHECK(JetSpace::index("u_tx") == std::pair{1, 1});
  CHECK(JetSpace::index("u") == std::pair{0, 0});
  CHECK_FALSE(JetSpace::index("u_xt"));
  CHECK_FALSE(JetSpace::index("ux"));
  JetSpace js;
  CHECK(js.derivatives().size() == 9);
  CHECK_THROWS_AS(js.variable(2, 2), Error);
}

TEST_CASE("total derivative: examples") {
  Environment env{{"eta", {"t", "x", "u"}}};
  Expr eta = env.apply("eta");
  CHECK(total_derivative(eta, "x") == parse("Diff(eta,x) + u_x*Diff(eta,u)", env));
  CHECK(total_derivative(sym("u_x"), "t") == sym("u_tx"));
  CHECK(total_derivative(sym("x") * sym("u_x"), "x") == sym("u_x") + sym("x") * sym("u_xx"));
  CHECK(total_derivative(sym("u_xx"), "t") == sym("u_txx"));
  CHECK_THROWS_AS(total_derivative(sym("u_txx"), "x"), Error);
  CHECK_THROWS_AS(total_derivative(sym("u"), "u"), Error);
}

TEST_CASE("total derivatives commute within truncation") {
  corpus::Generator gen(2024);
  for (int i = 0; i < 150; ++i) {
    Expr e = gen.next() + gen.jet_polynomial(2);
    e = substitute(e, Bindings().bind("u_xx", sym("u_x")).bind("u_tx", sym("u_t")));
    CAPTURE(to_string(e));
    CHECK(total_derivative(total_derivative(e, "x"), "t") == total_derivative(total_derivative(e, "t"), "x"));
  }
}

TEST_CASE("on_manifold: examples") {
  EquationClass cls = generalized_diffusion_class();
  CHECK(on_manifold(sym("u_t"), cls) == cls.parse("f*u_x^2 + g*u_xx"));
  CHECK(on_manifold(sym("u_tx"), cls) == sym("u_tx"));
  CHECK(on_manifold(cls.delta, cls).is_zero());
}

TEST_CASE("on_manifold and D_x agree up to the differentiated equation") {
  EquationClass cls = generalized_diffusion_class();
  corpus::Generator gen(77);
  Bindings both;
  both.bind("u_t", cls.rhs).bind("u_tx", total_derivative(cls.rhs, "x"));
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.next(2) + gen.next(2) * sym("u_t");
    Expr lhs = substitute(total_derivative(e, "x"), both);
    Expr rhs = total_derivative(on_manifold(e, cls), "x");
    CAPTURE(to_string(e));
    CHECK(numerically_zero(lhs - rhs).zero);
  }
}

TEST_CASE("split_determining: reconstruction and ordering") {
  CHECK(split_determining(0).empty());
  Expr ux = sym("u_x"), uxx = sym("u_xx"), utx = sym("u_tx"), x = sym("x");
  Expr e = 3 * ux * utx + x * utx + ux * uxx + 2 * ux * ux + uxx + x * ux + 7;
  DeterminingSystem sys = split_determining(e);
  REQUIRE(sys.size() == 7);
  CHECK(sys.equations[0].monomial == ux * utx);
  CHECK(sys.equations[1].monomial == utx);
  CHECK(sys.equations[2].monomial == ux * uxx);
  CHECK(sys.equations[3].monomial == ux * ux);
  CHECK(sys.equations[4].monomial == uxx);
  CHECK(sys.equations[5].monomial == ux);
  CHECK(sys.equations[6].monomial == 1);
  CHECK(sys.reconstruct() == e);
  CHECK_THROWS_AS(split_determining(exp(ux)), Error);

  corpus::Generator gen(5);
  for (int i = 0; i < 100; ++i) {
    Expr r = gen.jet_polynomial();
    CHECK(split_determining(r).reconstruct() == r);
  }
}

TEST_CASE("class declarations from JSON") {
  EquationClass cls = parse_class(R"({
    "name": "genDiff", "solved_for": "u_t", "rhs": "f*u_x^2 + g*u_xx",
    "delta": "u_t - f*u_x^2 - g*u_xx",
    "arbitrary_elements": {"f": ["x", "u"], "g": ["x", "u"]},
    "auxiliary": ["f_t", "g_t"], "nonvanishing": ["g"]})");
  EquationClass ref = generalized_diffusion_class();
  CHECK(cls.delta == ref.delta);
  CHECK(cls.auxiliary.size() == 2);
  CHECK(cls.nonvanishing[0] == ref.nonvanishing[0]);
  CHECK_THROWS_AS(parse_class("{"), Error);
  CHECK_THROWS_AS(parse_class(R"({"solved_for": "u_t"})"), Error);
  CHECK_THROWS_AS(parse_class(R"({"rhs": "u_xx", "delta": "u_t - u_x"})"), Error);
  CHECK_THROWS_AS(parse_class(R"({"rhs": "u_xx", "auxiliary": ["q_t"]})"), Error);
}

TEST_CASE("specialize") {
  EquationClass cls = generalized_diffusion_class();
  Expr u = sym("u");
  EquationClass burgers = specialize(cls, {{"f", 1}, {"g", 1}});
  CHECK(burgers.rhs == parse("u_x^2 + u_xx"));
  CHECK(burgers.arbitrary_elements.empty());
  EquationClass partial = specialize(cls, {{"f", 0}});
  CHECK(partial.rhs == partial.parse("g*u_xx"));
}
