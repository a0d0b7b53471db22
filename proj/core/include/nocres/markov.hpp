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

#ifndef NOCRES_MARKOV_HPP
#define NOCRES_MARKOV_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nocres::markov {

/// Thrown when a model violates its structural invariants.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the absorbing-chain linear system is numerically degenerate
/// even though a failure state is reachable.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StateId {
  std::size_t index = 0;
  std::string label;
};

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  double rate = 0.0;  // events per unit time, > 0
};

/// Labeled continuous-time Markov chain with a healthy/faulty state
/// partition. Immutable after construction; safe to share across threads.
class MarkovModel {
 public:
  /// Validates and builds a model. The faulty set is the complement of
  /// `healthy` within `states`.
  ///
  /// Throws ModelError on: duplicate labels, healthy states outside the
  /// state set, initial state not healthy, non-positive rates,
  /// self-transitions, or duplicate (from, to) pairs.
  static MarkovModel build(std::vector<StateId> states,
                           std::vector<std::size_t> healthy,
                           std::vector<Transition> transitions,
                           std::size_t initial);

  const std::vector<StateId>& states() const { return states_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::size_t initial() const { return initial_; }
  bool is_healthy(std::size_t state) const { return healthy_mask_[state]; }
  std::size_t num_states() const { return states_.size(); }
  std::size_t num_healthy() const { return num_healthy_; }

  /// Outgoing transitions of `state` (indices into transitions()).
  const std::vector<std::size_t>& out_edges(std::size_t state) const {
    return out_edges_[state];
  }

  /// Total exit rate of `state`.
  double exit_rate(std::size_t state) const { return exit_rate_[state]; }

 private:
  MarkovModel() = default;

  std::vector<StateId> states_;
  std::vector<bool> healthy_mask_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> out_edges_;
  std::vector<double> exit_rate_;
  std::size_t initial_ = 0;
  std::size_t num_healthy_ = 0;
};

/// Expected time to first entry into a faulty state, starting from the
/// model's initial state. `infinite` is set when no faulty state can be
/// reached (then `mtbf` is meaningless and sojourns are empty).
struct MtbfResult {
  bool infinite = false;
  double mtbf = 0.0;
  /// Expected time spent in each healthy state before absorption,
  /// keyed by state index. Entries sum to mtbf.
  std::map<std::size_t, double> per_state_sojourn;
};

/// Mean time to absorption of the chain with all faulty states made
/// absorbing. Solves Q_HH * t = -1 over the healthy states reachable from
/// the initial state by partial-pivoting elimination.
///
/// Returns an infinite result when the faulty set is unreachable from the
/// initial state, or when the walk can enter a healthy subset with no path
/// to a faulty state (absorption probability < 1 implies infinite mean).
/// Throws NumericError if the system is singular despite reachability.
MtbfResult solve_mtbf(const MarkovModel& model);

struct SimulationResult {
  double estimate = 0.0;
  /// Standard error of the mean; 0 by convention when trials == 1.
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
};

/// Monte Carlo estimate of the same absorption time: exponential holding
/// times, jump probabilities proportional to rates. Deterministic for a
/// given seed; per-trial generators are seeded from splitmix64(seed, trial).
/// Requires that solve_mtbf(model) is finite (callers should check
/// reachability first); a trial that reaches a healthy sink throws
/// ModelError.
SimulationResult simulate_mtbf(const MarkovModel& model, std::uint64_t trials,
                               std::uint64_t seed);

}  // namespace nocres::markov

#endif  // NOCRES_MARKOV_HPP
