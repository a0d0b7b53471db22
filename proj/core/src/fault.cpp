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

#include "nocres/fault.hpp"

#include <algorithm>
#include <tuple>

namespace nocres::noc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless counter-style generator: every random draw is a pure function
// of the injection key plus a per-draw salt.
std::uint64_t draw_bits(const FaultPlan& plan, Site site, std::uint64_t cycle,
                        int router_index, int execution_index,
                        std::uint64_t salt) {
  std::uint64_t h = splitmix64(plan.seed);
  h = splitmix64(h ^ cycle);
  h = splitmix64(h ^ static_cast<std::uint64_t>(router_index));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(site) << 32));
  h = splitmix64(h ^ static_cast<std::uint64_t>(execution_index));
  return splitmix64(h ^ salt);
}

double to_unit(std::uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

Port other_port(Port correct, std::uint64_t bits) {
  // Uniform over the six ports != correct.
  auto idx = static_cast<std::size_t>(to_unit(bits) * (kNumPorts - 1));
  if (idx >= kNumPorts - 1) idx = kNumPorts - 2;
  if (idx >= static_cast<std::size_t>(correct)) ++idx;
  return static_cast<Port>(idx);
}

// Per-triple corruption decision in SINGLE_PER_TRIPLE mode: with
// probability p one execution index (uniform over 1..3) is corrupted.
struct TripleDraw {
  int corrupt_index = 0;  // 0 = none
  Port corrupted = Port::kLocal;
};

TripleDraw draw_triple(const FaultPlan& plan, Site site, Port correct,
                       std::uint64_t base_cycle, int router_index) {
  TripleDraw d;
  const double p = plan.prob(site);
  if (p <= 0.0) return d;
  if (to_unit(draw_bits(plan, site, base_cycle, router_index, 0, 101)) >= p)
    return d;
  const double u = to_unit(draw_bits(plan, site, base_cycle, router_index, 0, 102));
  d.corrupt_index = 1 + std::min(2, static_cast<int>(u * 3.0));
  d.corrupted = other_port(
      correct, draw_bits(plan, site, base_cycle, router_index, 0, 103));
  return d;
}

}  // namespace

ProtectionCounters& ProtectionCounters::operator+=(
    const ProtectionCounters& o) {
  faults_injected += o.faults_injected;
  faults_detected += o.faults_detected;
  faults_recovered += o.faults_recovered;
  silent_corruptions += o.silent_corruptions;
  unresolved_votes += o.unresolved_votes;
  misroute_events += o.misroute_events;
  misforward_events += o.misforward_events;
  return *this;
}

std::pair<Port, std::optional<FaultEvent>> inject(Site site, Port correct,
                                                  const FaultPlan& plan,
                                                  const InjectKey& key) {
  const double p = plan.prob(site);
  if (p > 0.0 &&
      to_unit(draw_bits(plan, site, key.cycle, key.router_index,
                        key.execution_index, 1)) < p) {
    const Port bad = other_port(
        correct, draw_bits(plan, site, key.cycle, key.router_index,
                           key.execution_index, 2));
    return {bad, FaultEvent{key.cycle, key.router, site, key.execution_index,
                            bad}};
  }
  return {correct, std::nullopt};
}

namespace {

struct SiteRun {
  Port final_value;
  bool mismatch = false;
};

// Executes one site the required number of times for `mode`, updating the
// outcome's counters and event log. exec_cycle(i) is the global cycle in
// which execution i runs (SERA spreads executions over successive cycles).
SiteRun run_site(ProtectionMode mode, Site site, Port correct,
                 const FaultPlan& plan, std::uint64_t cycle, int router_index,
                 const Coord& router, StageOutcome& out) {
  const TripleDraw triple =
      plan.mode == FaultMode::kSinglePerTriple
          ? draw_triple(plan, site, correct, cycle, router_index)
          : TripleDraw{};

  const auto exec = [&](int i, std::uint64_t exec_cycle) -> Port {
    Port value = correct;
    std::optional<FaultEvent> event;
    if (plan.mode == FaultMode::kSinglePerTriple) {
      if (triple.corrupt_index == i) {
        value = triple.corrupted;
        event = FaultEvent{exec_cycle, router, site, i, value};
      }
    } else {
      InjectKey key{exec_cycle, router_index, router, i};
      std::tie(value, event) = inject(site, correct, plan, key);
    }
    if (event) {
      ++out.delta.faults_injected;
      out.events.push_back(*event);
    }
    return value;
  };

  switch (mode) {
    case ProtectionMode::kBaseline:
      return {exec(1, cycle), false};

    case ProtectionMode::kTmr: {
      const Port a = exec(1, cycle);
      const Port b = exec(2, cycle);
      const Port c = exec(3, cycle);
      if (a == b && b == c) return {a, false};
      ++out.delta.faults_detected;
      const VoteResult<Port> vote = majority_vote(a, b, c);
      if (vote.unresolved) ++out.delta.unresolved_votes;
      if (vote.value == correct)
        ++out.delta.faults_recovered;
      else
        ++out.delta.silent_corruptions;
      return {vote.value, true};
    }

    case ProtectionMode::kSera: {
      const Port a = exec(1, cycle);
      const Port b = exec(2, cycle + 1);
      if (a == b) {
        // Identical corruption of both executions is undetectable; only
        // possible in INDEPENDENT mode.
        if (a != correct) ++out.delta.silent_corruptions;
        return {a, false};
      }
      ++out.delta.faults_detected;
      const Port c = exec(3, cycle + 2);
      const VoteResult<Port> vote = majority_vote(a, b, c);
      if (vote.unresolved) ++out.delta.unresolved_votes;
      if (vote.value == correct)
        ++out.delta.faults_recovered;
      else
        ++out.delta.silent_corruptions;
      return {vote.value, true};
    }
  }
  return {correct, false};
}

}  // namespace

StageOutcome run_stage(ProtectionMode mode, Port npc_correct, Port sa_correct,
                       const FaultPlan& plan, std::uint64_t cycle,
                       int router_index, const Coord& router) {
  StageOutcome out;
  const SiteRun npc = run_site(mode, Site::kNpc, npc_correct, plan, cycle,
                               router_index, router, out);
  const SiteRun sa = run_site(mode, Site::kSa, sa_correct, plan, cycle,
                              router_index, router, out);
  out.npc_value = npc.final_value;
  out.sa_value = sa.final_value;
  if (mode == ProtectionMode::kSera)
    out.cycles_used = (npc.mismatch || sa.mismatch) ? 3 : 2;
  else
    out.cycles_used = 1;
  return out;
}

}  // namespace nocres::noc
