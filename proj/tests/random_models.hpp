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

#ifndef NOCRES_TESTS_RANDOM_MODELS_HPP
#define NOCRES_TESTS_RANDOM_MODELS_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "nocres/markov.hpp"

namespace nocres::testutil {

/// Random small chain with a finite absorption time: healthy states
/// 0..h-1, faulty states h..n-1. Every healthy state i gets a forward edge
/// to i+1, so a faulty state is always reachable, plus a few extra random
/// edges (including repair-style back edges).
inline markov::MarkovModel random_finite_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(2, 6);
  const int n = n_dist(rng);
  std::uniform_int_distribution<int> h_dist(1, n - 1);
  const int h = h_dist(rng);

  std::vector<markov::StateId> states;
  for (int i = 0; i < n; ++i)
    states.push_back({static_cast<std::size_t>(i), "S" + std::to_string(i)});
  std::vector<std::size_t> healthy;
  for (int i = 0; i < h; ++i) healthy.push_back(static_cast<std::size_t>(i));

  std::uniform_real_distribution<double> rate(0.1, 5.0);
  std::vector<markov::Transition> transitions;
  std::set<std::pair<int, int>> used;
  const auto add = [&](int from, int to) {
    if (from == to || !used.insert({from, to}).second) return;
    transitions.push_back({static_cast<std::size_t>(from),
                           static_cast<std::size_t>(to), rate(rng)});
  };

  for (int i = 0; i < h; ++i) add(i, i + 1);
  std::uniform_int_distribution<int> extra_count(0, 2 * h);
  std::uniform_int_distribution<int> any_from(0, h - 1);
  std::uniform_int_distribution<int> any_to(0, n - 1);
  const int extras = extra_count(rng);
  for (int e = 0; e < extras; ++e) add(any_from(rng), any_to(rng));

  return markov::MarkovModel::build(std::move(states), std::move(healthy),
                                    std::move(transitions), 0);
}

}  // namespace nocres::testutil

#endif  // NOCRES_TESTS_RANDOM_MODELS_HPP
