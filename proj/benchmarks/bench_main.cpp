/*
 * Copyright 2026 The noc-resilience Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "nocres/markov.hpp"
#include "nocres/raf.hpp"
#include "nocres/traffic.hpp"

using namespace nocres;

static void BM_MeshStep(benchmark::State& state) {
  noc::MeshConfig cfg;
  cfg.dims = {4, 4, 4};
  cfg.mode = static_cast<noc::ProtectionMode>(state.range(0));
  noc::Mesh mesh(cfg, {});
  noc::TrafficGen gen(noc::TrafficPattern::kUniform, cfg.dims, 1);
  std::uint64_t pid = 0;
  for (auto _ : state) {
    std::vector<noc::Mesh::Injection> inj;
    for (int n = 0; n < cfg.dims.nodes(); ++n) {
      const noc::Coord src = cfg.dims.coord_of(n);
      if (!mesh.can_inject(src)) continue;
      noc::Flit f;
      f.kind = noc::FlitKind::kSingle;
      f.packet_id = pid++;
      f.dest = gen.destination(src);
      f.next_port = noc::compute_next_port(src, f.dest);
      inj.push_back({src, f});
    }
    benchmark::DoNotOptimize(mesh.step(inj));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          cfg.dims.nodes());
}
BENCHMARK(BM_MeshStep)->Arg(0)->Arg(1)->Arg(2);

static void BM_FullRun(benchmark::State& state) {
  noc::MeshConfig cfg;
  cfg.dims = {4, 4, 4};
  noc::TrafficSpec traffic;
  traffic.pattern = noc::TrafficPattern::kTranspose;
  traffic.packets_per_node = 8;
  noc::FaultPlan plan;
  plan.p_npc = 0.1667;
  plan.p_sa = 0.1667;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        noc::run_benchmark(cfg, traffic, plan, noc::ProtectionMode::kSera));
  }
}
BENCHMARK(BM_FullRun)->Unit(benchmark::kMillisecond);

static void BM_MtbfSolve(benchmark::State& state) {
  raf::FtSystemRates rates{0.45, 0.3, 0.15, 0.05, 1e6};
  const markov::MarkovModel model = raf::ft_model(rates);
  for (auto _ : state)
    benchmark::DoNotOptimize(markov::solve_mtbf(model));
}
BENCHMARK(BM_MtbfSolve);

static void BM_MtbfSimulate(benchmark::State& state) {
  raf::FtSystemRates rates{0.45, 0.3, 0.15, 0.05, 1e6};
  const markov::MarkovModel model = raf::ft_model(rates);
  for (auto _ : state)
    benchmark::DoNotOptimize(markov::simulate_mtbf(
        model, static_cast<std::uint64_t>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MtbfSimulate)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
