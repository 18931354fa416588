#include <benchmark/benchmark.h>

#include "ldsolve/polyring.hpp"

using namespace ldsolve;

namespace {

LaurentPolynomial dense(long n) {
  LaurentPolynomial p;
  for (long i = 0; i < n; ++i)
    for (long j = 0; i + j < n; ++j) p.add_term(ExponentVector{{"a", i}, {"b", j}, {"z", i - j}}, i + 2 * j + 1);
  return p;
}

}  // namespace

static void BM_Multiply(benchmark::State& state) {
  LaurentPolynomial p = dense(state.range(0)), q = dense(state.range(0) / 2 + 1);
  for (auto _ : state) benchmark::DoNotOptimize(p * q);
  state.SetComplexityN(static_cast<int64_t>(p.size() * q.size()));
}
BENCHMARK(BM_Multiply)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_ExactDivTwoTerm(benchmark::State& state) {
  LaurentPolynomial d = parse_polynomial("1 - a*b*z^2");
  LaurentPolynomial p = dense(state.range(0)) * d;
  for (auto _ : state) benchmark::DoNotOptimize(p.exact_div(d));
}
BENCHMARK(BM_ExactDivTwoTerm)->RangeMultiplier(2)->Range(4, 32);

static void BM_ExpandTruncated(benchmark::State& state) {
  NiceRational f = parse_nice_rational("x6^4*y^23 / ((1-x6*y^5)*(1-x6*y^6)*(1-x3*x6*y^9))");
  VarSet vars{"x3", "x6", "y"};
  for (auto _ : state) benchmark::DoNotOptimize(expand_truncated(f, vars, state.range(0)));
}
BENCHMARK(BM_ExpandTruncated)->Arg(35)->Arg(70)->Arg(140);

static void BM_SumReduced(benchmark::State& state) {
  std::vector<NiceRational> parts;
  for (long k = 1; k <= state.range(0); ++k) {
    Denominator den{{ExponentVector{{"a", k}}, 1}, {ExponentVector{{"b", 1}, {"a", 1}}, 1}};
    parts.emplace_back(LaurentPolynomial(ExponentVector{{"b", k}}), den);
  }
  for (auto _ : state) benchmark::DoNotOptimize(sum_reduced(parts));
}
BENCHMARK(BM_SumReduced)->Arg(4)->Arg(8)->Arg(16);
