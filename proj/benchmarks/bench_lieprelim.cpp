#include <benchmark/benchmark.h>

#include <random>

#include "lieprelim/classify.hpp"
#include "lieprelim/format.hpp"
#include "lieprelim/numeric.hpp"
#include "lieprelim/verify.hpp"

using namespace lieprelim;
using E = EquivAlgebraElement;

static void ParseRoundTrip(benchmark::State& state) {
  Environment env{{"f", {"x", "u"}},      {"g", {"x", "u"}},       {"tau", {"t", "x", "u"}},
                  {"xi", {"t", "x", "u"}}, {"eta", {"t", "x", "u"}}};
  const char* text = "eta*Diff(f,u) + Diff(eta,u)*f + Diff(eta,u,u)*g + f*Diff(tau,t) - 2*f*Diff(xi,x) + Diff(f,x)*xi";
  for (auto _ : state) {
    Expr e = parse(text, env);
    benchmark::DoNotOptimize(to_string(e));
  }
}
BENCHMARK(ParseRoundTrip);

static void Prolongation(benchmark::State& state) {
  EquationClass cls = generalized_diffusion_class();
  VectorField q = generic_ansatz();
  for (auto _ : state) benchmark::DoNotOptimize(prolong(q, cls));
}
BENCHMARK(Prolongation);

static void DeterminingSystemDiffusion(benchmark::State& state) {
  EquationClass cls = generalized_diffusion_class();
  for (auto _ : state) benchmark::DoNotOptimize(determining_system(cls, generic_ansatz()));
}
BENCHMARK(DeterminingSystemDiffusion)->Unit(benchmark::kMillisecond);

static void DeterminingSystemLinear(benchmark::State& state) {
  EquationClass cls = linear_class();
  for (auto _ : state) benchmark::DoNotOptimize(determining_system(cls, generic_ansatz()));
}
BENCHMARK(DeterminingSystemLinear)->Unit(benchmark::kMillisecond);

static void EquivalenceInvariance(benchmark::State& state) {
  EquationClass cls = generalized_diffusion_class();
  VectorField v = (E::Dx() + 3 * E::Dt() + E::G(parse("exp(u)"))).to_field();
  for (auto _ : state) benchmark::DoNotOptimize(equiv_invariance_check(v, cls));
}
BENCHMARK(EquivalenceInvariance)->Unit(benchmark::kMillisecond);

static void Oracle(benchmark::State& state) {
  Expr e = parse("(x^2 - u^2)/(x - u) - x - u");
  OracleOptions opts;
  opts.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerically_zero(e, opts));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Oracle)->RangeMultiplier(4)->Range(4, 256)->Complexity();

static void Normalize1D(benchmark::State& state) {
  E v = parse_element("Dx + 3*Dt + 5*dx + G(2*u + 1)");
  for (auto _ : state) benchmark::DoNotOptimize(normalize_1d(v));
}
BENCHMARK(Normalize1D);

static void Normalize2D(benchmark::State& state) {
  auto c = canonical("2D-5", {{"a", 2}, {"b", parse("1/2")}});
  EquivTransform T = EquivTransform::translation_x(3).after(EquivTransform::gauge(UFunction::affine(2, -1)));
  E v1 = push_forward(T, c.basis[0]) + push_forward(T, c.basis[1]);
  E v2 = push_forward(T, c.basis[1]);
  for (auto _ : state) benchmark::DoNotOptimize(normalize_2d(v1, v2));
}
BENCHMARK(Normalize2D);

static void AdjointSeries(benchmark::State& state) {
  Expr eps = sym("epsilon");
  for (auto _ : state) {
    benchmark::DoNotOptimize(adjoint_series(E::Dx(), E::dx(), eps, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(AdjointSeries)->DenseRange(4, 16, 4);

static void VerifyTable(benchmark::State& state) {
  const char* ids[] = {"1", "2", "3", "all"};
  const char* id = ids[state.range(0)];
  state.SetLabel(id);
  for (auto _ : state) benchmark::DoNotOptimize(verify_table(id));
}
BENCHMARK(VerifyTable)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
