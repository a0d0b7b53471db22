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

#ifndef NOCRES_ROUTER_HPP
#define NOCRES_ROUTER_HPP

#include <array>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nocres/fault.hpp"
#include "nocres/flit.hpp"
#include "nocres/geometry.hpp"

namespace nocres::noc {

/// Raised when a flow-control contract is violated (e.g. a sender pushed
/// into a full buffer). Indicates a harness bug, not a modeled fault.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-cycle event trace line sink: cycle, router, event, port, packet, seq.
using TraceSink =
    std::function<void(std::uint64_t cycle, const Coord& router,
                       const char* event, Port port, std::uint64_t packet_id,
                       std::uint32_t seq)>;

struct RouterConfig {
  Coord coord;
  int index = 0;  // dense router index within the mesh
  Dims dims;
  int buffer_depth = 4;
  ProtectionMode mode = ProtectionMode::kBaseline;
};

/// One 7-port wormhole router with the BW -> NPC/SA -> CT pipeline.
///
/// A cycle is driven in three steps so a mesh can keep all routers
/// globally consistent:
///   1. buffer_write(cycle, arrivals)  -- BW stage
///   2. input_stalled(port)            -- flow-control flags for upstream
///   3. advance(cycle, downstream_stall) -> shipped flits -- NPC/SA + CT
///
/// A flit written in cycle t is eligible for switch allocation from t+1
/// and traverses the crossbar one cycle after its grant, so an
/// uncontended BASELINE hop takes exactly 3 cycles buffer-write to
/// buffer-write. SERA holds head flits in the NPC/SA stage for 1 extra
/// cycle (2 on mismatch); TMR adds none.
class Router {
 public:
  Router(const RouterConfig& config, const FaultPlan& plan);

  /// BW: enqueue this cycle's link arrivals. Throws SimulationError on
  /// overflow (stall-go contract violation upstream).
  void buffer_write(std::uint64_t cycle,
                    const std::array<std::optional<Flit>, kNumPorts>& arrivals);

  /// Stall-go flag for the upstream side of input `p`: asserted when free
  /// slots <= min(2, buffer_depth - 1).
  bool input_stalled(Port p) const;

  /// NPC/SA + CT for one cycle. `downstream_stall[o]` is the stall flag of
  /// the receiver behind output `o` (ignored for kLocal). Returns the flits
  /// shipped on each output link this cycle.
  std::array<std::optional<Flit>, kNumPorts> advance(
      std::uint64_t cycle, const std::array<bool, kNumPorts>& downstream_stall);

  const Coord& coord() const { return cfg_.coord; }
  const ProtectionCounters& counters() const { return counters_; }
  const std::vector<FaultEvent>& fault_events() const { return fault_events_; }
  std::uint64_t flits_dropped() const { return flits_dropped_; }

  std::size_t occupancy(Port in) const {
    return inputs_[static_cast<std::size_t>(in)].buf.size();
  }
  bool output_locked(Port out) const {
    return outputs_[static_cast<std::size_t>(out)].locked;
  }
  /// Flits held in pipeline registers (CT stage), not counted by occupancy.
  std::size_t pipeline_flits() const;

  void set_trace(TraceSink sink) { trace_ = std::move(sink); }

 private:
  struct BufferedFlit {
    Flit flit;
    std::uint64_t bw_cycle = 0;
  };

  struct InputUnit {
    std::deque<BufferedFlit> buf;
    // Cached NPC/SA stage result for the current head flit.
    bool stage_done = false;
    Port final_out = Port::kLocal;    // SA outcome: crossbar binding
    Port final_stamp = Port::kLocal;  // NPC outcome: stamp for downstream
    std::uint64_t stage_ready = 0;    // earliest grant cycle
    std::uint64_t stage_key = 0;      // packet_id of the cached head
    // Orphan disposal after a dropped head.
    bool dropping = false;
    std::uint64_t drop_packet = 0;
  };

  struct OutputUnit {
    bool locked = false;
    std::size_t locked_input = 0;
    std::uint64_t locked_packet = 0;
    std::size_t rr_ptr = 0;
    std::optional<Flit> ct_current;  // traversing this cycle
    std::optional<Flit> ct_next;     // granted this cycle
  };

  void drop_packet(std::uint64_t cycle, std::size_t in, const char* reason);
  void prepare_stage(std::uint64_t cycle, std::size_t in);

  RouterConfig cfg_;
  FaultPlan plan_;
  int stall_threshold_;
  std::array<InputUnit, kNumPorts> inputs_;
  std::array<OutputUnit, kNumPorts> outputs_;
  ProtectionCounters counters_;
  std::vector<FaultEvent> fault_events_;
  std::uint64_t flits_dropped_ = 0;
  TraceSink trace_;
};

}  // namespace nocres::noc

#endif  // NOCRES_ROUTER_HPP
