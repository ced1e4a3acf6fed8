#include "adelic/adelic.hpp"
#include "adelic/gabor_real.hpp"
#include "adelic/heisenberg.hpp"
#include "adelic/padic_function.hpp"
#include "adelic/wexler_raz.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace adelic;

namespace {

const double kRootHalf = std::sqrt(0.5);

const Window& gaussian_dual() {
  static const Window h = canonical_dual(Window::gaussian(), RectLattice(kRootHalf, kRootHalf), DualMethod::Auto, 1e-10);
  return h;
}

void BM_CharBallIntegral(benchmark::State& state) {
  const Prime p = static_cast<Prime>(state.range(0));
  Rational r(BigInt(7), BigInt(p * p * p * p * p));
  PAdicBall ball(p, Rational(BigInt(3), BigInt(p * p)), -2);
  for (auto _ : state) benchmark::DoNotOptimize(char_ball_integral(r, ball));
}
BENCHMARK(BM_CharBallIntegral)->Arg(2)->Arg(3)->Arg(5);

void BM_CharacterPair(benchmark::State& state) {
  auto g = GroupSelector::adele();
  Rational alpha(BigInt(3), BigInt(7));
  auto x = lattice_embed(g, RealNumber(alpha), Rational(BigInt(11), BigInt(360)));
  auto y = lattice_embed(g, RealNumber(Rational(1) / alpha), Rational(BigInt(-5), BigInt(84)));
  for (auto _ : state) benchmark::DoNotOptimize(character_pair(x, y, g));
}
BENCHMARK(BM_CharacterPair);

void BM_FrameBounds(benchmark::State& state) {
  double d = static_cast<double>(state.range(0)) / 100.0;
  RectLattice lat(std::sqrt(d), std::sqrt(d));
  for (auto _ : state) benchmark::DoNotOptimize(frame_bounds_rational(Window::gaussian(), lat, 16));
}
BENCHMARK(BM_FrameBounds)->Arg(50)->Arg(80)->Arg(95)->Unit(benchmark::kMillisecond);

void BM_CanonicalDual(benchmark::State& state) {
  auto method = static_cast<DualMethod>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(canonical_dual(Window::gaussian(), RectLattice(kRootHalf, kRootHalf), method, 1e-10));
}
BENCHMARK(BM_CanonicalDual)
    ->Arg(static_cast<int>(DualMethod::Neumann))
    ->Arg(static_cast<int>(DualMethod::Grid))
    ->Unit(benchmark::kMillisecond);

void BM_WexlerRaz(benchmark::State& state) {
  GroupSelector groups[] = {GroupSelector::real(), GroupSelector::rxqp(2), GroupSelector::adele()};
  AdelicTFLattice lat(groups[state.range(0)], kRootHalf, kRootHalf);
  SeparableWindow g(Window::gaussian()), h(gaussian_dual());
  for (auto _ : state) benchmark::DoNotOptimize(wexler_raz_check(g, h, lat, Truncation{}, 1e-8));
}
BENCHMARK(BM_WexlerRaz)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ModuleInner(benchmark::State& state) {
  ModuleAlgebraTag tag(ModuleSide::LeftA, GroupSelector::adele(), kRootHalf, kRootHalf);
  SeparableWindow f(Window::gaussian().shifted(0.3, -0.2)), g(Window::gaussian());
  Truncation t;
  t.height = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(module_inner(f, g, tag, t, 1e-12));
}
BENCHMARK(BM_ModuleInner)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_TwistedConvolution(benchmark::State& state) {
  ModuleAlgebraTag tag(ModuleSide::LeftA, GroupSelector::adele(), kRootHalf, kRootHalf);
  SeparableWindow g(Window::gaussian());
  auto a = module_inner(g, g, tag, Truncation{}, 1e-12);
  for (auto _ : state) benchmark::DoNotOptimize(twisted_convolve(a, a));
}
BENCHMARK(BM_TwistedConvolution)->Unit(benchmark::kMillisecond);

void BM_ModuleAxiom(benchmark::State& state) {
  SeparableWindow f(Window::gaussian().shifted(0.1, 0.2)), g(Window::gaussian()), h(Window::gaussian().shifted(-0.2, 0.1));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        module_axiom_check(f, g, h, GroupSelector::adele(), kRootHalf, kRootHalf, Truncation{}, 1e-6));
}
BENCHMARK(BM_ModuleAxiom)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
