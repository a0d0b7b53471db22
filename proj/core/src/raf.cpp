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

#include "nocres/raf.hpp"

#include <stdexcept>

namespace nocres::raf {

double system_fault_rate(const std::vector<ComponentProfile>& components,
                         double lambda_unit) {
  if (components.empty())
    throw std::invalid_argument("component list is empty");
  if (!(lambda_unit > 0.0))
    throw std::invalid_argument("lambda_unit must be positive");
  double rate = 0.0;
  for (const ComponentProfile& c : components) {
    if (c.f < 0.0 || c.f > 1.0)
      throw std::invalid_argument("coverage factor f out of [0,1] for " +
                                  c.name);
    if (c.operating_ratio < 0.0 || c.area_ratio < 0.0)
      throw std::invalid_argument("negative ratio for " + c.name);
    rate += c.f * c.operating_ratio * c.area_ratio * lambda_unit;
  }
  return rate;
}

RafResult raf_closed_form(const ComponentProfile& protected_module,
                          const ComponentProfile& corrector) {
  const double denom =
      protected_module.f * protected_module.operating_ratio *
          protected_module.area_ratio +
      corrector.operating_ratio * corrector.area_ratio;
  RafResult result;
  result.mtbf_original = 1.0;  // lambda_D normalized to 1
  if (denom <= 0.0) {
    result.unbounded = true;
    return result;
  }
  result.raf = 1.0 / denom;
  result.mtbf_ft = result.raf;
  return result;
}

RafResult raf_from_markov(const markov::MarkovModel& original,
                          const markov::MarkovModel& ft) {
  const markov::MtbfResult base = markov::solve_mtbf(original);
  const markov::MtbfResult prot = markov::solve_mtbf(ft);
  RafResult result;
  if (base.infinite) {
    // Original already never fails; any finite FT MTBF gives raf 0.
    result.mtbf_original = 0.0;
    result.unbounded = prot.infinite;
    return result;
  }
  result.mtbf_original = base.mtbf;
  if (prot.infinite) {
    result.unbounded = true;
    return result;
  }
  result.mtbf_ft = prot.mtbf;
  result.raf = prot.mtbf / base.mtbf;
  return result;
}

markov::MarkovModel simplex_model(double lambda) {
  return markov::MarkovModel::build(
      {{0, "S0"}, {1, "FAIL"}}, {0}, {{0, 1, lambda}}, 0);
}

markov::MarkovModel ft_model(const FtSystemRates& rates) {
  std::vector<markov::Transition> edges;
  if (rates.lambda_d1 > 0.0) edges.push_back({0, 1, rates.lambda_d1});
  if (rates.mu_d > 0.0) edges.push_back({1, 0, rates.mu_d});
  if (rates.lambda_d2 > 0.0) edges.push_back({0, 2, rates.lambda_d2});
  if (rates.lambda_c > 0.0) edges.push_back({0, 3, rates.lambda_c});
  return markov::MarkovModel::build(
      {{0, "S0"}, {1, "REPAIR"}, {2, "FAIL"}, {3, "CORR_FAIL"}}, {0, 1},
      std::move(edges), 0);
}

markov::MarkovModel tmr_model(double lambda) {
  return markov::MarkovModel::build(
      {{0, "S0"}, {1, "S1"}, {2, "FAIL"}}, {0, 1},
      {{0, 1, 3.0 * lambda}, {1, 2, 2.0 * lambda}}, 0);
}

}  // namespace nocres::raf
