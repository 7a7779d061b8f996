#include <benchmark/benchmark.h>

#include "covlab/ed_family.hpp"

using namespace covlab;

static void BM_EqExact(benchmark::State& state, std::vector<int> sizes) {
  Profile p(sizes);
  for (auto _ : state) {
    EqResult r = eq_exact(p);
    benchmark::DoNotOptimize(r.bounds.exact);
  }
}
BENCHMARK_CAPTURE(BM_EqExact, p33, std::vector<int>{3, 3});
BENCHMARK_CAPTURE(BM_EqExact, p44, std::vector<int>{4, 4});
BENCHMARK_CAPTURE(BM_EqExact, p333, std::vector<int>{3, 3, 3});
BENCHMARK_CAPTURE(BM_EqExact, p3333, std::vector<int>{3, 3, 3, 3});

static void BM_EqGreedy(benchmark::State& state) {
  Profile p({5, 5, 5});
  for (auto _ : state) {
    EDFamily f = eq_greedy(p);
    benchmark::DoNotOptimize(f.members.size());
  }
}
BENCHMARK(BM_EqGreedy);

static void BM_VerifyFamily(benchmark::State& state) {
  Profile p({4, 4, 4});
  EqResult r = eq_exact(p);
  for (auto _ : state) {
    EDFamily f = verify_family(*r.family);
    benchmark::DoNotOptimize(f.status);
  }
}
BENCHMARK(BM_VerifyFamily);
