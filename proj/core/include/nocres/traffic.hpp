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

#ifndef NOCRES_TRAFFIC_HPP
#define NOCRES_TRAFFIC_HPP

#include <optional>
#include <random>
#include <vector>

#include "nocres/mesh.hpp"

namespace nocres::noc {

enum class TrafficPattern : std::uint8_t { kUniform, kTranspose, kMatmul };

struct TrafficSpec {
  TrafficPattern pattern = TrafficPattern::kUniform;
  int packets_per_node = 8;
  int packet_length = 5;       // flits; 1 gives SINGLE packets
  int injection_interval = 20;  // cycles between packet starts per node
};

/// Destination generator. UNIFORM draws any node != src; TRANSPOSE maps
/// (x,y,z) -> (y,x,z) with a uniform fallback for diagonal sources (and
/// for transposes that land off-mesh on non-square meshes); MATMUL cycles
/// round-robin over the row and column partners in the source's XY plane.
class TrafficGen {
 public:
  TrafficGen(TrafficPattern pattern, const Dims& dims, std::uint64_t seed);

  /// Next destination for a packet from `src`. Throws SimulationError on a
  /// degenerate single-node mesh.
  Coord destination(const Coord& src);

 private:
  Coord uniform_other(const Coord& src);

  TrafficPattern pattern_;
  Dims dims_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> rr_;  // per-node MATMUL partner cursor
};

struct RunMetrics {
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t misrouted = 0;    // ejected at the wrong node
  std::uint64_t undelivered = 0;  // dropped or stuck at the watchdog
  bool avg_delay_defined = false;
  double avg_delay = 0.0;  // head injection to tail ejection, inclusive
  double throughput = 0.0;  // flits per cycle per node
  std::uint64_t finish_time = 0;
  std::optional<std::uint64_t> first_failure_cycle;
  ProtectionCounters prot;
  bool incomplete = false;  // watchdog expired before drain
};

struct RunOptions {
  std::uint64_t watchdog_cycles = 1'000'000;
  TraceSink trace;
};

/// Injects the benchmark's packets open-loop (per-node start every
/// injection_interval cycles, delayed by local stall-go), steps the mesh
/// until drained or the watchdog fires, and aggregates metrics.
/// Deterministic for fixed configs and seeds.
RunMetrics run_benchmark(const MeshConfig& mesh_config,
                         const TrafficSpec& traffic, const FaultPlan& plan,
                         ProtectionMode mode,
                         const RunOptions& options = {});

}  // namespace nocres::noc

#endif  // NOCRES_TRAFFIC_HPP
