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

#include "nocres/markov.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <unordered_set>

namespace nocres::markov {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Solves A x = b in place by partial-pivoting elimination. Rate matrices
// can be badly scaled, so degeneracy is flagged against the largest entry
// of the original matrix rather than an absolute epsilon.
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  const double tol = 1e-14 * scale;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < tol)
      throw NumericError("rate matrix is numerically singular (pivot below " +
                         std::to_string(tol) + ")");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double sum = b[i];
    for (std::size_t c = i + 1; c < n; ++c) sum -= a[i][c] * x[c];
    x[i] = sum / a[i][i];
  }
  return x;
}

}  // namespace

MarkovModel MarkovModel::build(std::vector<StateId> states,
                               std::vector<std::size_t> healthy,
                               std::vector<Transition> transitions,
                               std::size_t initial) {
  const std::size_t m = states.size();
  if (m == 0) throw ModelError("model has no states");
  std::unordered_set<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) {
    states[i].index = i;
    if (!labels.insert(states[i].label).second)
      throw ModelError("duplicate state label: " + states[i].label);
  }

  std::vector<bool> mask(m, false);
  for (std::size_t h : healthy) {
    if (h >= m) throw ModelError("healthy state index out of range");
    if (mask[h]) throw ModelError("healthy set lists state twice: " +
                                  states[h].label);
    mask[h] = true;
  }
  if (healthy.empty()) throw ModelError("healthy set is empty");
  if (healthy.size() == m)
    throw ModelError("model needs at least one faulty state");
  if (initial >= m || !mask[initial])
    throw ModelError("initial state must be a healthy state");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Transition& t : transitions) {
    if (t.from >= m || t.to >= m)
      throw ModelError("transition references unknown state");
    if (t.from == t.to)
      throw ModelError("self-transition on state " + states[t.from].label);
    if (!(t.rate > 0.0))
      throw ModelError("non-positive rate on transition " +
                       states[t.from].label + " -> " + states[t.to].label);
    if (!seen.insert({t.from, t.to}).second)
      throw ModelError("duplicate transition " + states[t.from].label +
                       " -> " + states[t.to].label);
  }

  MarkovModel model;
  model.states_ = std::move(states);
  model.healthy_mask_ = std::move(mask);
  model.transitions_ = std::move(transitions);
  model.initial_ = initial;
  model.num_healthy_ = healthy.size();
  model.out_edges_.resize(m);
  model.exit_rate_.assign(m, 0.0);
  for (std::size_t i = 0; i < model.transitions_.size(); ++i) {
    const Transition& t = model.transitions_[i];
    model.out_edges_[t.from].push_back(i);
    model.exit_rate_[t.from] += t.rate;
  }
  return model;
}

MtbfResult solve_mtbf(const MarkovModel& model) {
  const std::size_t m = model.num_states();

  // Healthy states reachable from the initial state before absorption.
  std::vector<bool> reachable(m, false);
  std::deque<std::size_t> queue{model.initial()};
  reachable[model.initial()] = true;
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    if (!model.is_healthy(s)) continue;  // faulty states absorb
    for (std::size_t e : model.out_edges(s)) {
      const std::size_t to = model.transitions()[e].to;
      if (!reachable[to]) {
        reachable[to] = true;
        queue.push_back(to);
      }
    }
  }

  // A reachable healthy state with no path to a faulty state means the
  // walk can avoid absorption forever: the mean is infinite. Detected by
  // reverse reachability from the faulty set over healthy-to-healthy edges.
  std::vector<bool> can_fail(m, false);
  std::deque<std::size_t> rev;
  for (const Transition& t : model.transitions())
    if (model.is_healthy(t.from) && !model.is_healthy(t.to) &&
        !can_fail[t.from]) {
      can_fail[t.from] = true;
      rev.push_back(t.from);
    }
  while (!rev.empty()) {
    const std::size_t s = rev.front();
    rev.pop_front();
    for (const Transition& t : model.transitions())
      if (t.to == s && model.is_healthy(t.from) && !can_fail[t.from]) {
        can_fail[t.from] = true;
        rev.push_back(t.from);
      }
  }

  MtbfResult result;
  for (std::size_t s = 0; s < m; ++s) {
    if (reachable[s] && model.is_healthy(s) &&
        (!can_fail[s] || model.exit_rate(s) == 0.0)) {
      result.infinite = true;
      return result;
    }
  }

  // Dense index over reachable healthy states.
  std::vector<std::size_t> dense_of(m, SIZE_MAX);
  std::vector<std::size_t> state_of;
  for (std::size_t s = 0; s < m; ++s)
    if (reachable[s] && model.is_healthy(s)) {
      dense_of[s] = state_of.size();
      state_of.push_back(s);
    }
  const std::size_t n = state_of.size();

  // Q_HH: generator restricted to reachable healthy states. Expected time
  // in each state before absorption solves Q^T s = -e_init, and the MTBF
  // is the sum of the sojourns (equal to t[init] of Q t = -1).
  std::vector<std::vector<double>> qt(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    qt[i][i] = -model.exit_rate(state_of[i]);
  for (const Transition& t : model.transitions()) {
    if (dense_of[t.from] == SIZE_MAX) continue;
    if (dense_of[t.to] == SIZE_MAX) continue;  // edge into the absorbing set
    qt[dense_of[t.to]][dense_of[t.from]] += t.rate;
  }
  std::vector<double> rhs(n, 0.0);
  rhs[dense_of[model.initial()]] = -1.0;
  const std::vector<double> sojourn = solve_dense(std::move(qt), std::move(rhs));

  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::max(sojourn[i], 0.0);
    result.per_state_sojourn[state_of[i]] = v;
    result.mtbf += v;
  }
  return result;
}

SimulationResult simulate_mtbf(const MarkovModel& model, std::uint64_t trials,
                               std::uint64_t seed) {
  if (trials == 0) throw ModelError("trials must be >= 1");

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(trial)));
    const auto uniform01 = [&rng] {
      return (rng() >> 11) * 0x1.0p-53;  // [0, 1)
    };

    double t = 0.0;
    std::size_t state = model.initial();
    while (model.is_healthy(state)) {
      const double rate = model.exit_rate(state);
      if (rate <= 0.0)
        throw ModelError("walk reached healthy sink state " +
                         model.states()[state].label);
      t += -std::log1p(-uniform01()) / rate;
      double pick = uniform01() * rate;
      std::size_t next = state;
      for (std::size_t e : model.out_edges(state)) {
        const Transition& tr = model.transitions()[e];
        next = tr.to;
        pick -= tr.rate;
        if (pick <= 0.0) break;
      }
      state = next;
    }
    sum += t;
    sum_sq += t * t;
  }

  SimulationResult res;
  res.trials = trials;
  res.estimate = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double n = static_cast<double>(trials);
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    res.stderr_ = std::sqrt(var / n);
  }
  return res;
}

}  // namespace nocres::markov
