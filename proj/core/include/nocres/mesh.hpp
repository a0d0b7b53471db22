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

#ifndef NOCRES_MESH_HPP
#define NOCRES_MESH_HPP

#include <memory>
#include <vector>

#include "nocres/router.hpp"

namespace nocres::noc {

struct MeshConfig {
  Dims dims{4, 4, 4};
  int buffer_depth = 4;
  int packet_length = 5;  // 1 HEAD + bodies + 1 TAIL
  ProtectionMode mode = ProtectionMode::kBaseline;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Globally synchronous 3D mesh of routers. Single-threaded and
/// deterministic: identical config, injection trace, and fault plan
/// reproduce the ejection trace cycle for cycle.
class Mesh {
 public:
  Mesh(const MeshConfig& config, const FaultPlan& plan);

  struct Injection {
    Coord at;
    Flit flit;
  };
  struct Ejection {
    Coord at;
    Flit flit;
    std::uint64_t cycle = 0;
  };

  /// True when the local input port of `at` can accept a flit this cycle
  /// (stall-go on the injection link).
  bool can_inject(const Coord& at) const;

  /// Advances every router one cycle. Injections become local-port buffer
  /// writes this cycle and must respect can_inject; a node must finish
  /// streaming one packet before starting the next. Returns the flits
  /// ejected at local ports.
  std::vector<Ejection> step(const std::vector<Injection>& injections = {});

  std::uint64_t cycle() const { return cycle_; }
  const MeshConfig& config() const { return cfg_; }
  const Router& router(const Coord& at) const {
    return *routers_[cfg_.dims.index_of(at)];
  }

  bool idle() const { return flits_in_flight() == 0; }
  std::uint64_t flits_injected() const { return flits_injected_; }
  std::uint64_t flits_ejected() const { return flits_ejected_; }
  std::uint64_t flits_dropped() const;
  /// Buffers + pipeline registers + link registers, scanned on demand.
  std::uint64_t flits_in_flight() const;

  ProtectionCounters counters() const;
  std::vector<FaultEvent> fault_events() const;

  void set_trace(TraceSink sink);

 private:
  MeshConfig cfg_;
  std::vector<std::unique_ptr<Router>> routers_;
  /// Link registers: flits shipped last cycle, written downstream next.
  std::vector<std::array<std::optional<Flit>, kNumPorts>> pending_;
  /// Packet currently streaming into each node's local port.
  std::vector<std::optional<std::uint64_t>> injecting_;
  std::uint64_t cycle_ = 0;
  std::uint64_t flits_injected_ = 0;
  std::uint64_t flits_ejected_ = 0;
};

/// Port on the receiving side of a link leaving through `out`.
Port opposite(Port out);

}  // namespace nocres::noc

#endif  // NOCRES_MESH_HPP
