#include <benchmark/benchmark.h>

#include "covlab/instances.hpp"
#include "covlab/torus.hpp"

using namespace covlab;

static void BM_CheckHypothesesS6(benchmark::State& state) {
  WitnessStructure w = instantiate_sym(3);
  for (auto _ : state) {
    HypothesisReport rep = check_hypotheses(w);
    benchmark::DoNotOptimize(rep.h4);
  }
}
BENCHMARK(BM_CheckHypothesesS6);

static void BM_VerifyCoveringS6(benchmark::State& state) {
  WitnessStructure w = instantiate_sym(3);
  std::vector<Seq> fam = minimal_injective_family(w);
  CoveringCertificate cert = build_covering(w, fam);
  for (auto _ : state) {
    CoveringCertificate out = verify_covering(cert, &w);
    benchmark::DoNotOptimize(out.status);
  }
}
BENCHMARK(BM_VerifyCoveringS6);

static void BM_TorusPipeline(benchmark::State& state) {
  for (auto _ : state) {
    TorusPipelineResult res = instantiate_dyadic_torus(static_cast<int>(state.range(0)),
                                                       {static_cast<int>(state.range(0)) / 2,
                                                        static_cast<int>(state.range(0)) -
                                                            static_cast<int>(state.range(0)) / 2});
    benchmark::DoNotOptimize(res.cert.status);
  }
}
BENCHMARK(BM_TorusPipeline)->Arg(6)->Arg(8);

static void BM_GradedNwd(benchmark::State& state) {
  GroupModel m = GroupModel::product({2, 2, 2, 2, 2, 2}, 3);
  ElemList elems;
  for (Elem e = 0; e < m.size(); e += 7) elems.push_back(e);
  GradedNwdSet set = GradedNwdSet::of(3, elems);
  for (auto _ : state) {
    NwdReport rep = is_graded_nwd(set, m);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_GradedNwd);
