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

#ifndef NOCRES_FAULT_HPP
#define NOCRES_FAULT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "nocres/geometry.hpp"

namespace nocres::noc {

enum class ProtectionMode : std::uint8_t { kBaseline, kTmr, kSera };
enum class Site : std::uint8_t { kNpc, kSa };

/// SINGLE_PER_TRIPLE corrupts at most one of the (up to) three executions
/// per site per head flit; INDEPENDENT rolls every execution on its own.
enum class FaultMode : std::uint8_t { kSinglePerTriple, kIndependent };

struct FaultPlan {
  double p_npc = 0.0;  // probability per NPC execution instance
  double p_sa = 0.0;   // probability per SA execution instance
  FaultMode mode = FaultMode::kSinglePerTriple;
  std::uint64_t seed = 0;

  double prob(Site s) const { return s == Site::kNpc ? p_npc : p_sa; }
  bool enabled() const { return p_npc > 0.0 || p_sa > 0.0; }
};

struct FaultEvent {
  std::uint64_t cycle = 0;
  Coord router;
  Site site = Site::kNpc;
  int execution_index = 1;  // 1..3
  Port corrupted_value = Port::kLocal;
};

struct ProtectionCounters {
  std::uint64_t faults_injected = 0;
  std::uint64_t faults_detected = 0;
  std::uint64_t faults_recovered = 0;
  std::uint64_t silent_corruptions = 0;
  std::uint64_t unresolved_votes = 0;
  std::uint64_t misroute_events = 0;
  std::uint64_t misforward_events = 0;

  ProtectionCounters& operator+=(const ProtectionCounters& o);
};

/// Identifies one execution instance for deterministic injection: the
/// corruption decision is a pure function of (plan.seed, cycle,
/// router_index, site, execution_index).
struct InjectKey {
  std::uint64_t cycle = 0;
  int router_index = 0;
  Coord router;
  int execution_index = 1;
};

/// Single transient-fault roll. With probability plan.prob(site) returns a
/// uniformly chosen different Port plus the event; otherwise the correct
/// value. A fault never reproduces the correct value.
std::pair<Port, std::optional<FaultEvent>> inject(Site site, Port correct,
                                                  const FaultPlan& plan,
                                                  const InjectKey& key);

template <typename T>
struct VoteResult {
  T value;
  bool unresolved = false;  // all three differed; third value taken
};

/// Two-of-three vote; a three-way disagreement takes the third (freshest)
/// value and flags it.
template <typename T>
VoteResult<T> majority_vote(const T& a, const T& b, const T& c) {
  if (a == b || a == c) return {a, false};
  if (b == c) return {b, false};
  return {c, true};
}

/// One NPC/SA stage pass for a head flit under the given protection mode.
struct StageOutcome {
  Port npc_value = Port::kLocal;
  Port sa_value = Port::kLocal;
  /// Cycles spent in the NPC/SA stage: 1 for BASELINE and TMR; 2 for SERA
  /// without mismatch, 3 when either site mismatched.
  int cycles_used = 1;
  ProtectionCounters delta;
  std::vector<FaultEvent> events;
};

/// Runs NPC and SA for one head flit with injection per plan. SERA
/// executes each site twice (cycle, cycle+1), compares, and on mismatch
/// recomputes at cycle+2 and votes. TMR executes three replicas in the
/// single stage cycle and votes. BASELINE executes once and lets the
/// (possibly corrupted) values through.
StageOutcome run_stage(ProtectionMode mode, Port npc_correct, Port sa_correct,
                       const FaultPlan& plan, std::uint64_t cycle,
                       int router_index, const Coord& router);

}  // namespace nocres::noc

#endif  // NOCRES_FAULT_HPP
