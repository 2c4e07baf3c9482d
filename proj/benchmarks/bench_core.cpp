// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qlink/aperture_optimizer.hpp"
#include "qlink/bessel.hpp"
#include "qlink/link_budget.hpp"
#include "qlink/qkd_rates.hpp"
#include "qlink/scenario.hpp"

using namespace qlink;

namespace {

const SiteDatabase& sites() {
  static const SiteDatabase db = SiteDatabase::load(QLINK_TEST_DATA_DIR "/sites.cfg");
  return db;
}

const ScenarioFile& hanle() {
  static const ScenarioFile sc =
      load_scenario(QLINK_TEST_DATA_DIR "/scenarios/hanle_signal.cfg", sites());
  return sc;
}

void BM_BesselJ1(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j1(x));
    x += 0.001;
    if (x > 12.0) x = 0.0;
  }
}
BENCHMARK(BM_BesselJ1);

void BM_Cn2MomentUnit(benchmark::State& state) {
  const HufnagelValleyProfile hv{};
  for (auto _ : state)
    benchmark::DoNotOptimize(cn2_moment(hv, 0.0, kCn2CeilingM, Cn2Weight::kUnit));
}
BENCHMARK(BM_Cn2MomentUnit);

void BM_AssembleLedger(benchmark::State& state) {
  const LinkScenario& link = hanle().link;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_ledger(link));
}
BENCHMARK(BM_AssembleLedger);

void BM_KeyrateDecoy(benchmark::State& state) {
  const DecoyParams& p = *hanle().decoy;
  for (auto _ : state) benchmark::DoNotOptimize(keyrate_decoy(p, 35.91));
}
BENCHMARK(BM_KeyrateDecoy);

void BM_FadingSampler(benchmark::State& state) {
  FadingSampler sampler(1e-4, 2.5, 0.25, 42);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.next());
}
BENCHMARK(BM_FadingSampler);

void BM_ApertureSweep(benchmark::State& state) {
  const BeamGeometry tpl{0.075, 810.0, 5e5, 0.0, 4500.0};
  const SiteProfile& site = sites().get("IAO-Hanle");
  const std::vector<double> grid{0.08, 0.12, 0.14, 0.15, 0.16, 0.20, 0.24};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_aperture(tpl, site, grid, 0.16));
}
BENCHMARK(BM_ApertureSweep);

}  // namespace

BENCHMARK_MAIN();
