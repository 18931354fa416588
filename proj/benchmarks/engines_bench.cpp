#include <benchmark/benchmark.h>

#include "ldsolve/basis.hpp"
#include "ldsolve/dioph.hpp"
#include "ldsolve/oracle.hpp"

using namespace ldsolve;

namespace {

const char* kTransport = "variables: x3, x6, y\n-4*x3 - 5*x6 + 1*y >= 3\n3*x3 + 6*x6 - 1*y >= 1\n";
const char* kHomogeneous = "variables: t1,t2,t3,t4\nt1+2*t2-t3-t4=0\n2*t1+3*t2-2*t3-t4=0\n";
// A three-row system on which Elliott does far more work than Xin.
const char* kWide = "variables: x1,x2,x3,x4\n3*x1-2*x2+x3-3*x4>=1\n-x1+3*x2-2*x3+2*x4=0\n2*x1+x2-3*x3-x4>=-2\n";

void series(benchmark::State& state, const char* text, Engine engine) {
  ConstraintSystem sys = parse_constraints(text);
  SolveOptions opts;
  opts.engine = engine;
  for (auto _ : state) benchmark::DoNotOptimize(characteristic_series(sys, opts));
}

}  // namespace

BENCHMARK_CAPTURE(series, transport_xin, kTransport, Engine::Xin)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(series, transport_elliott, kTransport, Engine::Elliott)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(series, homogeneous_xin, kHomogeneous, Engine::Xin)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(series, homogeneous_elliott, kHomogeneous, Engine::Elliott)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(series, wide_xin, kWide, Engine::Xin)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(series, wide_elliott, kWide, Engine::Elliott)->Unit(benchmark::kMillisecond);

static void BM_HilbertBasis(benchmark::State& state) {
  ConstraintSystem sys = parse_constraints(kHomogeneous);
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_basis(sys));
}
BENCHMARK(BM_HilbertBasis)->Unit(benchmark::kMillisecond);

static void BM_EulerCount(benchmark::State& state) {
  ConstraintSystem eqs = parse_constraints("variables: x1,x2,x3\nx1+x2+x3=10\nx1+2*x2+3*x3=15\n");
  std::vector<long> rhs{state.range(0), state.range(0) * 3 / 2};
  for (auto _ : state) benchmark::DoNotOptimize(euler_count(eqs, rhs));
}
BENCHMARK(BM_EulerCount)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_CheckSeries(benchmark::State& state) {
  ConstraintSystem sys = parse_constraints(kTransport);
  NiceRational chi = characteristic_series(sys);
  for (auto _ : state) benchmark::DoNotOptimize(check_series(chi, sys, state.range(0)));
}
BENCHMARK(BM_CheckSeries)->Arg(20)->Arg(35)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
