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

#include "nocres/router.hpp"

#include <algorithm>
#include <utility>

namespace nocres::noc {

namespace {
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}

Router::Router(const RouterConfig& config, const FaultPlan& plan)
    : cfg_(config), plan_(plan) {
  if (cfg_.buffer_depth < 2)
    throw SimulationError("buffer depth must be >= 2");
  stall_threshold_ = std::min(2, cfg_.buffer_depth - 1);
}

void Router::buffer_write(
    std::uint64_t cycle,
    const std::array<std::optional<Flit>, kNumPorts>& arrivals) {
  for (std::size_t p = 0; p < kNumPorts; ++p) {
    if (!arrivals[p]) continue;
    InputUnit& iu = inputs_[p];
    if (iu.buf.size() >= static_cast<std::size_t>(cfg_.buffer_depth))
      throw SimulationError("input buffer overflow at " +
                            to_string(cfg_.coord) + " port " +
                            port_name(static_cast<Port>(p)));
    iu.buf.push_back({*arrivals[p], cycle});
    if (trace_)
      trace_(cycle, cfg_.coord, "bw", static_cast<Port>(p),
             arrivals[p]->packet_id, arrivals[p]->seq);
  }
}

bool Router::input_stalled(Port p) const {
  const auto free = cfg_.buffer_depth -
                    static_cast<int>(inputs_[static_cast<std::size_t>(p)].buf.size());
  return free <= stall_threshold_;
}

std::size_t Router::pipeline_flits() const {
  std::size_t n = 0;
  for (const OutputUnit& ou : outputs_) {
    if (ou.ct_current) ++n;
    if (ou.ct_next) ++n;
  }
  return n;
}

void Router::drop_packet(std::uint64_t cycle, std::size_t in,
                         const char* reason) {
  InputUnit& iu = inputs_[in];
  const BufferedFlit head = iu.buf.front();
  iu.buf.pop_front();
  ++flits_dropped_;
  iu.stage_done = false;
  if (!is_tail(head.flit.kind)) {
    iu.dropping = true;
    iu.drop_packet = head.flit.packet_id;
  }
  if (trace_)
    trace_(cycle, cfg_.coord, reason, static_cast<Port>(in),
           head.flit.packet_id, head.flit.seq);
}

void Router::prepare_stage(std::uint64_t cycle, std::size_t in) {
  InputUnit& iu = inputs_[in];
  const Flit& f = iu.buf.front().flit;
  const Port requested = f.next_port;

  // Look-ahead consistency: a stamp that disagrees with dimension-order
  // routing from here means an upstream corruption reached us.
  if (requested != compute_next_port(cfg_.coord, f.dest))
    ++counters_.misroute_events;

  std::optional<Coord> next_at;
  if (requested == Port::kLocal) {
    next_at = cfg_.coord;
  } else {
    next_at = neighbor(cfg_.coord, requested, cfg_.dims);
    if (!next_at) {
      // Stamp points off-mesh: the flit would leave on a nonexistent link.
      drop_packet(cycle, in, "drop_offmesh");
      return;
    }
  }

  const Port npc_correct = compute_next_port(*next_at, f.dest);
  StageOutcome out = run_stage(cfg_.mode, npc_correct, requested, plan_, cycle,
                               cfg_.index, cfg_.coord);
  counters_ += out.delta;
  for (FaultEvent& e : out.events) fault_events_.push_back(e);
  if (out.sa_value != requested) ++counters_.misforward_events;

  iu.stage_done = true;
  iu.final_out = out.sa_value;
  iu.final_stamp = out.npc_value;
  iu.stage_ready = cycle + static_cast<std::uint64_t>(out.cycles_used) - 1;
  iu.stage_key = f.packet_id;
}

std::array<std::optional<Flit>, kNumPorts> Router::advance(
    std::uint64_t cycle, const std::array<bool, kNumPorts>& downstream_stall) {
  // --- NPC/SA: gather requests -------------------------------------------
  std::array<std::vector<std::size_t>, kNumPorts> head_requests;
  std::array<std::size_t, kNumPorts> continuation;
  continuation.fill(kNone);

  for (std::size_t in = 0; in < kNumPorts; ++in) {
    InputUnit& iu = inputs_[in];
    // Dispose of flits orphaned by a dropped head.
    while (!iu.buf.empty() && iu.dropping &&
           iu.buf.front().flit.packet_id == iu.drop_packet) {
      const bool tail = is_tail(iu.buf.front().flit.kind);
      iu.buf.pop_front();
      ++flits_dropped_;
      if (trace_)
        trace_(cycle, cfg_.coord, "drop_orphan", static_cast<Port>(in),
               iu.drop_packet, 0);
      if (tail) iu.dropping = false;
    }
    if (iu.buf.empty()) continue;
    const BufferedFlit& head = iu.buf.front();
    if (head.bw_cycle >= cycle) continue;  // BW occupies the arrival cycle

    if (is_head(head.flit.kind)) {
      if (!iu.stage_done || iu.stage_key != head.flit.packet_id)
        prepare_stage(cycle, in);
      if (!iu.stage_done) continue;  // dropped during stage preparation
      if (cycle < iu.stage_ready) continue;
      const Port out = iu.final_out;
      if (out != Port::kLocal && !neighbor(cfg_.coord, out, cfg_.dims)) {
        // Corrupted allocation points off-mesh.
        drop_packet(cycle, in, "drop_offmesh");
        continue;
      }
      head_requests[static_cast<std::size_t>(out)].push_back(in);
    } else {
      // BODY/TAIL strictly follow the wormhole lock their head acquired.
      for (std::size_t o = 0; o < kNumPorts; ++o) {
        const OutputUnit& ou = outputs_[o];
        if (ou.locked && ou.locked_input == in &&
            ou.locked_packet == head.flit.packet_id) {
          continuation[o] = in;
          break;
        }
      }
    }
  }

  // --- Switch allocation --------------------------------------------------
  for (std::size_t o = 0; o < kNumPorts; ++o) {
    OutputUnit& ou = outputs_[o];
    const bool stalled =
        o != static_cast<std::size_t>(Port::kLocal) && downstream_stall[o];

    if (ou.locked) {
      const std::size_t in = continuation[o];
      if (in == kNone || stalled) continue;
      InputUnit& iu = inputs_[in];
      Flit f = iu.buf.front().flit;
      iu.buf.pop_front();
      if (is_tail(f.kind)) ou.locked = false;
      ou.ct_next = f;
      if (trace_)
        trace_(cycle, cfg_.coord, "grant", static_cast<Port>(o), f.packet_id,
               f.seq);
      continue;
    }

    if (stalled || head_requests[o].empty()) continue;
    // Round-robin among requesting inputs, pointer past the last grantee.
    std::size_t grantee = kNone;
    for (std::size_t k = 0; k < kNumPorts; ++k) {
      const std::size_t cand = (ou.rr_ptr + k) % kNumPorts;
      if (std::find(head_requests[o].begin(), head_requests[o].end(), cand) !=
          head_requests[o].end()) {
        grantee = cand;
        break;
      }
    }
    if (grantee == kNone) continue;
    InputUnit& iu = inputs_[grantee];
    Flit f = iu.buf.front().flit;
    iu.buf.pop_front();
    iu.stage_done = false;
    if (f.kind == FlitKind::kHead) {
      ou.locked = true;
      ou.locked_input = grantee;
      ou.locked_packet = f.packet_id;
    }
    f.next_port = iu.final_stamp;  // look-ahead stamp for the next router
    ou.ct_next = f;
    ou.rr_ptr = (grantee + 1) % kNumPorts;
    if (trace_)
      trace_(cycle, cfg_.coord, "grant", static_cast<Port>(o), f.packet_id,
             f.seq);
  }

  // --- Crossbar traversal -------------------------------------------------
  std::array<std::optional<Flit>, kNumPorts> shipped;
  for (std::size_t o = 0; o < kNumPorts; ++o) {
    OutputUnit& ou = outputs_[o];
    if (ou.ct_current) {
      shipped[o] = *ou.ct_current;
      if (trace_)
        trace_(cycle, cfg_.coord, "ct", static_cast<Port>(o),
               ou.ct_current->packet_id, ou.ct_current->seq);
      ou.ct_current.reset();
    }
    ou.ct_current = std::exchange(ou.ct_next, std::nullopt);
  }
  return shipped;
}

}  // namespace nocres::noc
