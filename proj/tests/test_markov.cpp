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

#include <cmath>
#include <random>

#include "doctest.h"
#include "nocres/markov.hpp"
#include "nocres/raf.hpp"
#include "random_models.hpp"

using namespace nocres::markov;
using nocres::testutil::random_finite_model;

namespace {

MarkovModel two_state(double lambda) {
  return MarkovModel::build({{0, "S0"}, {1, "FAIL"}}, {0}, {{0, 1, lambda}},
                            0);
}

}  // namespace

TEST_CASE("single-exit chain has mean time 1/lambda") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(1e-6, 1e6);
  for (int i = 0; i < 100; ++i) {
    const double l = lam(rng);
    const MtbfResult r = solve_mtbf(two_state(l));
    REQUIRE_FALSE(r.infinite);
    CHECK(r.mtbf == doctest::Approx(1.0 / l).epsilon(1e-12));
  }
}

TEST_CASE("series chain adds the per-stage expected holding times") {
  // S0 -> S1 -> S2 -> FAIL with distinct rates; the mean is the sum of
  // the three exponential means.
  const MarkovModel m = MarkovModel::build(
      {{0, "S0"}, {1, "S1"}, {2, "S2"}, {3, "FAIL"}}, {0, 1, 2},
      {{0, 1, 0.5}, {1, 2, 4.0}, {2, 3, 0.25}}, 0);
  const MtbfResult r = solve_mtbf(m);
  REQUIRE_FALSE(r.infinite);
  CHECK(r.mtbf == doctest::Approx(2.0 + 0.25 + 4.0).epsilon(1e-12));
  CHECK(r.per_state_sojourn.at(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.per_state_sojourn.at(1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.per_state_sojourn.at(2) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("repairable system matches the closed-form mean") {
  // S0 -> REPAIR -> S0 loop plus two absorbing failure modes. The mean is
  // (1 + l1/mu) / (l2 + lc).
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r01(0.05, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double l1 = r01(rng), l2 = r01(rng), lc = r01(rng);
    const double mu = r01(rng) * 1e4;
    const MarkovModel m = MarkovModel::build(
        {{0, "S0"}, {1, "REPAIR"}, {2, "FAIL"}, {3, "CORR_FAIL"}}, {0, 1},
        {{0, 1, l1}, {1, 0, mu}, {0, 2, l2}, {0, 3, lc}}, 0);
    const MtbfResult r = solve_mtbf(m);
    REQUIRE_FALSE(r.infinite);
    CHECK(r.mtbf ==
          doctest::Approx((1.0 + l1 / mu) / (l2 + lc)).epsilon(1e-9));
  }
}

TEST_CASE("rates scale inversely with the mean") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    const MarkovModel m = random_finite_model(rng);
    const double base = solve_mtbf(m).mtbf;
    const double k = std::uniform_real_distribution<double>(0.01, 100)(rng);
    std::vector<Transition> scaled = m.transitions();
    for (Transition& t : scaled) t.rate *= k;
    std::vector<std::size_t> healthy;
    for (std::size_t s = 0; s < m.num_states(); ++s)
      if (m.is_healthy(s)) healthy.push_back(s);
    const MarkovModel ms = MarkovModel::build(m.states(), healthy,
                                              std::move(scaled), m.initial());
    CHECK(solve_mtbf(ms).mtbf == doctest::Approx(base / k).epsilon(1e-12));
  }
}

TEST_CASE("per-state sojourns sum to the mean") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 30; ++i) {
    const MtbfResult r = solve_mtbf(random_finite_model(rng));
    REQUIRE_FALSE(r.infinite);
    double sum = 0.0;
    for (const auto& [state, t] : r.per_state_sojourn) sum += t;
    CHECK(sum == doctest::Approx(r.mtbf).epsilon(1e-12));
  }
}

TEST_CASE("unreachable failure states give an infinite result") {
  SUBCASE("no outgoing edge from the initial state") {
    const MarkovModel m = MarkovModel::build(
        {{0, "S0"}, {1, "S1"}, {2, "FAIL"}}, {0, 1}, {{1, 2, 1.0}}, 0);
    CHECK(solve_mtbf(m).infinite);
  }
  SUBCASE("walk can be absorbed in a healthy sink") {
    const MarkovModel m = MarkovModel::build(
        {{0, "S0"}, {1, "SAFE"}, {2, "FAIL"}}, {0, 1},
        {{0, 1, 1.0}, {0, 2, 1.0}}, 0);
    CHECK(solve_mtbf(m).infinite);
  }
}

TEST_CASE("model validation rejects malformed inputs") {
  CHECK_THROWS_AS(MarkovModel::build({{0, "A"}, {1, "A"}}, {0}, {{0, 1, 1.0}},
                                     0),
                  ModelError);  // duplicate label
  CHECK_THROWS_AS(MarkovModel::build({{0, "A"}, {1, "B"}}, {0}, {{0, 1, 1.0}},
                                     1),
                  ModelError);  // initial state is faulty
  CHECK_THROWS_AS(MarkovModel::build({{0, "A"}, {1, "B"}}, {0}, {{0, 1, 0.0}},
                                     0),
                  ModelError);  // non-positive rate
  CHECK_THROWS_AS(MarkovModel::build({{0, "A"}, {1, "B"}}, {0}, {{0, 0, 1.0}},
                                     0),
                  ModelError);  // self transition
  CHECK_THROWS_AS(MarkovModel::build({{0, "A"}, {1, "B"}}, {0},
                                     {{0, 1, 1.0}, {0, 1, 2.0}}, 0),
                  ModelError);  // duplicate edge
  CHECK_THROWS_AS(MarkovModel::build({{0, "A"}, {1, "B"}}, {0, 1},
                                     {{0, 1, 1.0}}, 0),
                  ModelError);  // no faulty state at all
}

TEST_CASE("Monte Carlo estimate agrees with the linear solve") {
  const nocres::raf::FtSystemRates rates{0.45, 0.3, 0.15, 0.05, 2.0};
  const MarkovModel m = nocres::raf::ft_model(rates);
  const MtbfResult exact = solve_mtbf(m);
  REQUIRE_FALSE(exact.infinite);
  const SimulationResult sim = simulate_mtbf(m, 200'000, 42);
  CHECK(sim.trials == 200'000);
  CHECK(sim.stderr_ > 0.0);
  CHECK(std::abs(sim.estimate - exact.mtbf) < 3.5 * sim.stderr_);
}

TEST_CASE("Monte Carlo runs are seed-deterministic") {
  const MarkovModel m = two_state(0.7);
  const SimulationResult a = simulate_mtbf(m, 5'000, 9);
  const SimulationResult b = simulate_mtbf(m, 5'000, 9);
  const SimulationResult c = simulate_mtbf(m, 5'000, 10);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.estimate != c.estimate);
}

TEST_CASE("a single trial reports zero standard error") {
  const SimulationResult r = simulate_mtbf(two_state(1.0), 1, 3);
  CHECK(r.trials == 1);
  CHECK(r.stderr_ == 0.0);
  CHECK(r.estimate > 0.0);
}
