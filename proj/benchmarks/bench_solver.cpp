#include <benchmark/benchmark.h>

#include <vector>

#include "morpho/discretization.hpp"
#include "morpho/initial_conditions.hpp"
#include "morpho/observables.hpp"
#include "morpho/parallel.hpp"
#include "morpho/parameters.hpp"
#include "morpho/solver.hpp"
#include "morpho/uq.hpp"

namespace {

using namespace morpho;

// One homogeneous class-2 run to 365 days; range(0) is the element count.
void BM_SingleRun(benchmark::State& state) {
  const auto p = ParameterTable::bundled().age_profile(2);
  NumericsConfig cfg;
  cfg.n_elements = static_cast<std::size_t>(state.range(0));
  cfg.dt = 0.25;
  for (auto _ : state) {
    const auto tl = simulate(p, cfg);
    benchmark::DoNotOptimize(summarize(tl).rsa_min);
  }
}
BENCHMARK(BM_SingleRun)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

// Heterogeneous batch of 16 patients; range(0) is the worker count.
void BM_Batch(benchmark::State& state) {
  const auto& table = ParameterTable::bundled();
  const auto means = table.age_profile(2);
  const auto& profile = table.profile(2);
  NumericsConfig cfg;
  cfg.n_elements = 40;
  cfg.dt = 0.5;
  const auto spec = domain_from(means);
  const auto mesh = build_mesh(spec, cfg.n_elements);
  const auto pts = mesh.initial_midpoints();
  const KLSpec kl{20, 2.0 * means.L};
  constexpr std::size_t batch = 16;
  std::vector<double> sink(batch);
  for (auto _ : state) {
    parallel_for(batch, static_cast<unsigned>(state.range(0)), [&](std::size_t r) {
      auto rng = replicate_rng(3, 2, r);
      const auto material = make_material(sample_patient(means, profile, kl, pts, rng), mesh);
      sink[r] = summarize(simulate(material, build_initial_state(material.mean, spec, mesh), cfg)).rsa_min;
    });
    benchmark::DoNotOptimize(sink.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * batch));
}
BENCHMARK(BM_Batch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
