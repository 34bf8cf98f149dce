#include <benchmark/benchmark.h>

#include "qhyp/fourier.hpp"

using namespace qhyp;

namespace {

MCConfig config(bool parallel) {
  MCConfig mc;
  mc.exec = parallel ? Exec::parallel : Exec::serial;
  mc.k_samples = 20000;
  mc.panel_points = 16;
  mc.t_panel_width = 0.5;
  mc.ball_k_samples = 64;
  return mc;
}

void BM_PoissonQuadrature(benchmark::State& state) {
  const GroupContext ctx(1);
  const BundleWeight nu{2};
  SampleStream s(1, 0);
  const auto f = BoundarySection::generator(ctx, nu, 1.0, random_element(ctx, 0.5, s), basis_vector(nu, 0));
  const GroupElement x = random_element(ctx, 0.5, s);
  const auto mc = config(state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(poisson_quadrature(ctx, nu, 1.0, f, x, mc));
}
BENCHMARK(BM_PoissonQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_HelgasonFourier(benchmark::State& state) {
  const GroupContext ctx(1);
  const BundleWeight nu{2};
  const auto F = tau_radial_section(ctx, nu, gaussian_bump(0.3, 2.0), basis_vector(nu, 0));
  SampleStream s(2, 0);
  const KElement k = haar_k(ctx, s);
  const auto mc = config(state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(helgason_fourier(ctx, nu, F, 1.0, k, mc));
}
BENCHMARK(BM_HelgasonFourier)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BallAverage(benchmark::State& state) {
  const GroupContext ctx(1);
  const BundleWeight nu{1};
  SampleStream s(3, 0);
  const auto P = poisson_generator(ctx, nu, 1.0, random_element(ctx, 0.4, s), basis_vector(nu, 0));
  const auto mc = config(state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(ball_average(ctx, P, {10.0}, mc));
}
BENCHMARK(BM_BallAverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_JacobiForward(benchmark::State& state) {
  const JacobiParams p(1, 5);
  const auto f = gaussian_bump(0.3, 2.0);
  const JacobiForward fwd(p, f);
  double l = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwd(l));
    l = l < 10.0 ? l + 0.37 : 0.5;
  }
}
BENCHMARK(BM_JacobiForward)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
