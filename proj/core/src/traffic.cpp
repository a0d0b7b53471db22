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

#include "nocres/traffic.hpp"

#include <algorithm>
#include <unordered_map>

namespace nocres::noc {

TrafficGen::TrafficGen(TrafficPattern pattern, const Dims& dims,
                       std::uint64_t seed)
    : pattern_(pattern), dims_(dims), rng_(seed ^ 0x7261666669636bULL) {
  if (dims_.nodes() < 2)
    throw SimulationError("traffic needs at least two nodes");
  rr_.assign(static_cast<std::size_t>(dims_.nodes()), 0);
}

Coord TrafficGen::uniform_other(const Coord& src) {
  std::uniform_int_distribution<int> pick(0, dims_.nodes() - 2);
  int idx = pick(rng_);
  if (idx >= dims_.index_of(src)) ++idx;
  return dims_.coord_of(idx);
}

Coord TrafficGen::destination(const Coord& src) {
  switch (pattern_) {
    case TrafficPattern::kUniform:
      return uniform_other(src);

    case TrafficPattern::kTranspose: {
      const Coord t{src.y, src.x, src.z};
      if (t == src || !dims_.contains(t)) return uniform_other(src);
      return t;
    }

    case TrafficPattern::kMatmul: {
      // Operand-exchange partners: same row, then same column, in the
      // source's XY plane.
      std::vector<Coord> partners;
      for (int x = 0; x < dims_.x; ++x)
        if (x != src.x) partners.push_back({x, src.y, src.z});
      for (int y = 0; y < dims_.y; ++y)
        if (y != src.y) partners.push_back({src.x, y, src.z});
      if (partners.empty()) return uniform_other(src);
      std::uint32_t& cursor = rr_[static_cast<std::size_t>(dims_.index_of(src))];
      const Coord dest = partners[cursor % partners.size()];
      ++cursor;
      return dest;
    }
  }
  return uniform_other(src);
}

namespace {

struct PacketRecord {
  Coord dest;
  std::uint64_t inject_cycle = 0;
  std::uint32_t flits_seen = 0;
  bool done = false;
};

struct NodeSource {
  Coord at;
  int packets_left = 0;
  std::uint64_t next_start = 0;  // earliest start cycle for the next packet
  // Packet currently streaming into the local port.
  bool active = false;
  std::uint64_t packet_id = 0;
  Coord dest;
  int next_seq = 0;
};

}  // namespace

RunMetrics run_benchmark(const MeshConfig& mesh_config,
                         const TrafficSpec& traffic, const FaultPlan& plan,
                         ProtectionMode mode, const RunOptions& options) {
  // packets_per_node == 0 is the documented zero-traffic case.
  if (traffic.packets_per_node < 0 || traffic.injection_interval < 1 ||
      traffic.packet_length < 1)
    throw SimulationError("invalid traffic spec");

  MeshConfig cfg = mesh_config;
  cfg.mode = mode;
  cfg.packet_length = traffic.packet_length;
  cfg.validate();

  Mesh mesh(cfg, plan);
  if (options.trace) mesh.set_trace(options.trace);
  TrafficGen gen(traffic.pattern, cfg.dims, cfg.seed);

  const int nodes = cfg.dims.nodes();
  const int length = traffic.packet_length;
  std::vector<NodeSource> sources(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    sources[i].at = cfg.dims.coord_of(i);
    sources[i].packets_left = traffic.packets_per_node;
  }

  std::unordered_map<std::uint64_t, PacketRecord> packets;
  RunMetrics m;
  double delay_sum = 0.0;
  std::uint64_t last_ejection = 0;
  std::uint64_t next_packet_id = 0;
  int streaming = 0;  // sources mid-packet
  std::uint64_t packets_pending =
      static_cast<std::uint64_t>(nodes) *
      static_cast<std::uint64_t>(traffic.packets_per_node);

  const auto note_failure = [&](std::uint64_t cycle) {
    if (!m.first_failure_cycle) m.first_failure_cycle = cycle;
  };

  while (true) {
    const std::uint64_t c = mesh.cycle();
    if (c >= options.watchdog_cycles) {
      m.incomplete = true;
      break;
    }
    if (packets_pending == 0 && streaming == 0 && mesh.idle()) break;

    // Stage this cycle's injections: one flit per node, stall-go willing.
    std::vector<Mesh::Injection> injections;
    for (NodeSource& src : sources) {
      if (!src.active) {
        if (src.packets_left == 0 || c < src.next_start) continue;
        if (!mesh.can_inject(src.at)) continue;  // delayed, stays pending
        src.active = true;
        src.packet_id = next_packet_id++;
        src.dest = gen.destination(src.at);
        src.next_seq = 0;
        --src.packets_left;
        --packets_pending;
        ++streaming;
        src.next_start = c + static_cast<std::uint64_t>(traffic.injection_interval);
        packets[src.packet_id] = PacketRecord{src.dest, c, 0, false};
        ++m.sent;
      } else if (!mesh.can_inject(src.at)) {
        continue;
      }

      Flit f;
      f.packet_id = src.packet_id;
      f.seq = static_cast<std::uint32_t>(src.next_seq);
      f.dest = src.dest;
      f.inject_cycle = c;
      f.payload = static_cast<std::uint32_t>(src.packet_id);
      if (length == 1)
        f.kind = FlitKind::kSingle;
      else if (src.next_seq == 0)
        f.kind = FlitKind::kHead;
      else if (src.next_seq == length - 1)
        f.kind = FlitKind::kTail;
      else
        f.kind = FlitKind::kBody;
      if (is_head(f.kind)) f.next_port = compute_next_port(src.at, src.dest);
      injections.push_back({src.at, f});

      if (++src.next_seq == length) {
        src.active = false;
        --streaming;
      }
    }

    const std::uint64_t dropped_before = mesh.flits_dropped();
    const auto ejections = mesh.step(injections);
    if (mesh.flits_dropped() > dropped_before) note_failure(c);

    for (const Mesh::Ejection& e : ejections) {
      last_ejection = e.cycle;
      auto it = packets.find(e.flit.packet_id);
      if (it == packets.end()) continue;
      PacketRecord& rec = it->second;
      ++rec.flits_seen;
      if (is_tail(e.flit.kind) && !rec.done) {
        rec.done = true;
        if (e.at == rec.dest) {
          ++m.delivered;
          delay_sum += static_cast<double>(e.cycle - rec.inject_cycle + 1);
        } else {
          ++m.misrouted;
          note_failure(e.cycle);
        }
      }
    }
  }

  m.undelivered = m.sent - m.delivered - m.misrouted;
  m.finish_time = m.sent > 0 ? last_ejection + 1 : 0;
  if (m.delivered > 0) {
    m.avg_delay_defined = true;
    m.avg_delay = delay_sum / static_cast<double>(m.delivered);
  }
  if (m.finish_time > 0)
    m.throughput = static_cast<double>(mesh.flits_ejected()) /
                   (static_cast<double>(m.finish_time) *
                    static_cast<double>(nodes));
  m.prot = mesh.counters();
  return m;
}

}  // namespace nocres::noc
