#include <benchmark/benchmark.h>

#include "amo/bigq.hpp"
#include "amo/cocycle.hpp"
#include "amo/dos.hpp"
#include "amo/green.hpp"
#include "amo/spectrum.hpp"

using namespace amo;

static void BM_TransferProductMpfr(benchmark::State& state) {
  PrecisionGuard g(128);
  CReal E{Real(3), Real(0)};
  Real alpha("0.3819660112"), lam("0.5"), th("0.1");
  long n = state.range(0);
  for (auto _ : state) {
    auto m = transfer_product(E, alpha, lam, th, n);
    benchmark::DoNotOptimize(m.log_scale);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TransferProductMpfr)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_LyapunovFineDouble(benchmark::State& state) {
  RationalFreq pq(233, 610);
  for (auto _ : state) {
    double v = lyapunov_fine({0.5, 0.01}, pq, 0.7, 0.3);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * 610);
}
BENCHMARK(BM_LyapunovFineDouble)->Unit(benchmark::kMicrosecond);

static void BM_SturmBoxCount(benchmark::State& state) {
  long L = state.range(0);
  for (auto _ : state) {
    double v = ids_finite_box(0.5, RationalFreq(2, 5), 0.5, 0.1, L);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * L);
}
BENCHMARK(BM_SturmBoxCount)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_DiscrSkeleton(benchmark::State& state) {
  long q = state.range(0);
  long p = q / 2 - (q % 2 ? 0 : 1);
  for (auto _ : state) {
    PrecisionGuard g(precision_bits_for_q(q));
    auto sk = discr_skeleton(RationalFreq(p | 1, q), Real("0.5"));
    benchmark::DoNotOptimize(sk.zeros.size());
  }
}
BENCHMARK(BM_DiscrSkeleton)->Arg(13)->Arg(55)->Unit(benchmark::kMillisecond);

static void BM_FineIntersectionMeasure(benchmark::State& state) {
  RationalFreq coarse(1, 3), fine(1000, 3001);
  for (auto _ : state) {
    auto fm = fine_intersection_measure(coarse, fine, 0.5, 0.125);
    benchmark::DoNotOptimize(fm.ln_measure);
  }
}
BENCHMARK(BM_FineIntersectionMeasure)->Unit(benchmark::kMillisecond);

static void BM_GreenSolve(benchmark::State& state) {
  auto box = BoxOperator::amo_finite(0, 499, RationalFreq(2, 5), 0.6, 0.3);
  for (auto _ : state) {
    GreenSolver s(box, Cd2(0.4, 0.15));
    benchmark::DoNotOptimize(s.g(0, 499));
  }
}
BENCHMARK(BM_GreenSolve)->Unit(benchmark::kMicrosecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
