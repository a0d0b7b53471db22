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

#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "nocres/traffic.hpp"

using namespace nocres::noc;

TEST_CASE("transpose swaps x and y and falls back on the diagonal") {
  const Dims dims{4, 4, 4};
  TrafficGen gen(TrafficPattern::kTranspose, dims, 1);
  CHECK(gen.destination({1, 2, 3}) == Coord{2, 1, 3});
  CHECK(gen.destination({3, 0, 0}) == Coord{0, 3, 0});
  for (int i = 0; i < 50; ++i) {
    const Coord d = gen.destination({2, 2, 1});
    CHECK(d != Coord{2, 2, 1});
    CHECK(dims.contains(d));
  }
}

TEST_CASE("transpose avoids off-mesh targets on non-square meshes") {
  const Dims dims{4, 2, 1};
  TrafficGen gen(TrafficPattern::kTranspose, dims, 1);
  for (int i = 0; i < 50; ++i) {
    const Coord d = gen.destination({3, 1, 0});  // transpose (1,3,0) is off-mesh
    CHECK(dims.contains(d));
    CHECK(d != Coord{3, 1, 0});
  }
}

TEST_CASE("uniform destinations cover every other node evenly") {
  const Dims dims{4, 4, 1};
  TrafficGen gen(TrafficPattern::kUniform, dims, 7);
  const Coord src{1, 1, 0};
  std::map<int, int> counts;
  const int draws = 30'000;
  for (int i = 0; i < draws; ++i) {
    const Coord d = gen.destination(src);
    CHECK(d != src);
    REQUIRE(dims.contains(d));
    ++counts[dims.index_of(d)];
  }
  CHECK(counts.size() == 15);
  const double expected = draws / 15.0;
  for (const auto& [node, n] : counts)
    CHECK(std::abs(n - expected) < 5.0 * std::sqrt(expected));
}

TEST_CASE("operand exchange cycles through the row and column partners") {
  const Dims dims{4, 4, 1};
  TrafficGen gen(TrafficPattern::kMatmul, dims, 1);
  const Coord src{1, 2, 0};
  std::set<int> first_round;
  for (int i = 0; i < 6; ++i) {
    const Coord d = gen.destination(src);
    CHECK((d.y == src.y || d.x == src.x));
    CHECK(d.z == src.z);
    CHECK(d != src);
    first_round.insert(dims.index_of(d));
  }
  CHECK(first_round.size() == 6);  // 3 row partners + 3 column partners
  // The seventh draw restarts the cycle.
  CHECK(first_round.count(dims.index_of(gen.destination(src))) == 1);
}

TEST_CASE("zero traffic produces an empty run") {
  MeshConfig cfg;
  cfg.dims = {2, 2, 1};
  TrafficSpec traffic;
  traffic.packets_per_node = 0;
  const RunMetrics m =
      run_benchmark(cfg, traffic, {}, ProtectionMode::kBaseline);
  CHECK(m.sent == 0);
  CHECK(m.delivered == 0);
  CHECK(m.finish_time == 0);
  CHECK_FALSE(m.avg_delay_defined);
  CHECK_FALSE(m.incomplete);
}

TEST_CASE("fault-free runs deliver everything") {
  MeshConfig cfg;
  cfg.dims = {3, 3, 2};
  cfg.seed = 11;
  TrafficSpec traffic;
  traffic.packets_per_node = 6;
  traffic.packet_length = 4;
  traffic.injection_interval = 8;
  for (TrafficPattern p : {TrafficPattern::kUniform, TrafficPattern::kTranspose,
                           TrafficPattern::kMatmul}) {
    traffic.pattern = p;
    for (ProtectionMode mode : {ProtectionMode::kBaseline, ProtectionMode::kTmr,
                                ProtectionMode::kSera}) {
      const RunMetrics m = run_benchmark(cfg, traffic, {}, mode);
      CHECK(m.sent == 6u * 18u);
      CHECK(m.delivered == m.sent);
      CHECK(m.misrouted == 0);
      CHECK(m.undelivered == 0);
      CHECK(m.avg_delay_defined);
      CHECK(m.avg_delay > 0.0);
      CHECK(m.throughput > 0.0);
      CHECK_FALSE(m.first_failure_cycle.has_value());
      CHECK_FALSE(m.incomplete);
      CHECK(m.prot.faults_injected == 0);
    }
  }
}

TEST_CASE("identical configurations replay identically") {
  MeshConfig cfg;
  cfg.dims = {3, 3, 1};
  cfg.seed = 21;
  TrafficSpec traffic;
  traffic.packets_per_node = 5;
  traffic.packet_length = 3;
  traffic.injection_interval = 5;
  FaultPlan plan;
  plan.p_npc = 0.2;
  plan.p_sa = 0.1;
  plan.seed = 21;
  const RunMetrics a =
      run_benchmark(cfg, traffic, plan, ProtectionMode::kSera);
  const RunMetrics b =
      run_benchmark(cfg, traffic, plan, ProtectionMode::kSera);
  CHECK(a.sent == b.sent);
  CHECK(a.delivered == b.delivered);
  CHECK(a.avg_delay == b.avg_delay);
  CHECK(a.throughput == b.throughput);
  CHECK(a.finish_time == b.finish_time);
  CHECK(a.prot.faults_injected == b.prot.faults_injected);
}

TEST_CASE("re-executing protection costs delay but never packets") {
  MeshConfig cfg;
  cfg.dims = {4, 4, 1};
  cfg.seed = 2;
  TrafficSpec traffic;
  traffic.pattern = TrafficPattern::kTranspose;
  traffic.packets_per_node = 10;
  traffic.packet_length = 5;
  traffic.injection_interval = 15;

  const RunMetrics base =
      run_benchmark(cfg, traffic, {}, ProtectionMode::kBaseline);
  const RunMetrics sera =
      run_benchmark(cfg, traffic, {}, ProtectionMode::kSera);
  REQUIRE(base.avg_delay_defined);
  REQUIRE(sera.avg_delay_defined);
  CHECK(sera.avg_delay > base.avg_delay);
  CHECK(sera.delivered == sera.sent);

  FaultPlan plan;
  plan.p_npc = 0.33;
  plan.p_sa = 0.33;
  plan.seed = 2;
  const RunMetrics faulty =
      run_benchmark(cfg, traffic, plan, ProtectionMode::kSera);
  CHECK(faulty.delivered == faulty.sent);
  CHECK(faulty.misrouted == 0);
  CHECK(faulty.prot.faults_injected > 0);
  CHECK(faulty.prot.faults_recovered == faulty.prot.faults_detected);
  CHECK(faulty.avg_delay > sera.avg_delay);
}

TEST_CASE("an unprotected mesh under attack reports its first failure") {
  MeshConfig cfg;
  cfg.dims = {3, 3, 1};
  cfg.seed = 4;
  TrafficSpec traffic;
  traffic.packets_per_node = 8;
  traffic.packet_length = 3;
  traffic.injection_interval = 6;
  FaultPlan plan;
  plan.p_npc = 0.33;
  plan.p_sa = 0.33;
  plan.mode = FaultMode::kIndependent;
  plan.seed = 4;
  const RunMetrics m =
      run_benchmark(cfg, traffic, plan, ProtectionMode::kBaseline,
                    {.watchdog_cycles = 200'000});
  CHECK(m.sent == 72);
  CHECK(m.delivered < m.sent);
  CHECK(m.sent == m.delivered + m.misrouted + m.undelivered);
  REQUIRE(m.first_failure_cycle.has_value());
  CHECK(*m.first_failure_cycle < 200'000);
  CHECK_FALSE(m.incomplete);
}

TEST_CASE("invalid traffic specs are rejected") {
  MeshConfig cfg;
  cfg.dims = {2, 2, 1};
  TrafficSpec traffic;
  traffic.packets_per_node = -1;
  CHECK_THROWS_AS(run_benchmark(cfg, traffic, {}, ProtectionMode::kBaseline),
                  SimulationError);
  traffic.packets_per_node = 1;
  traffic.injection_interval = 0;
  CHECK_THROWS_AS(run_benchmark(cfg, traffic, {}, ProtectionMode::kBaseline),
                  SimulationError);
}
