#include <benchmark/benchmark.h>

#include "qnil/ratfun.hpp"

using namespace qnil;

static void BM_ratfun_mul(benchmark::State& state) {
  RatFun a(Poly::parse("1+2*q+q^3"), Poly::parse("3+q^2"));
  RatFun b(Poly::parse("-1+q^4"), Poly::parse("1+q"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_ratfun_mul);

static void BM_ratfun_add(benchmark::State& state) {
  RatFun a(Poly::parse("1+2*q+q^3"), Poly::parse("3+q^2"));
  RatFun b(Poly::parse("-1+q^4"), Poly::parse("1+q"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a + b);
  }
}
BENCHMARK(BM_ratfun_add);

BENCHMARK_MAIN();
