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

#ifndef NOCRES_RAF_HPP
#define NOCRES_RAF_HPP

#include <string>
#include <vector>

#include "nocres/markov.hpp"

namespace nocres::raf {

/// Component description relative to a reference unit: residual fault
/// fraction f in [0,1], operating-time ratio, area ratio.
struct ComponentProfile {
  std::string name;
  double f = 1.0;
  double operating_ratio = 1.0;
  double area_ratio = 1.0;
};

struct FtSystemRates {
  double lambda_d = 0.0;
  double lambda_d1 = 0.0;  // handled by the corrector
  double lambda_d2 = 0.0;  // not correctable; lambda_d1 + lambda_d2 == lambda_d
  double lambda_c = 0.0;   // fault rate of the corrector itself
  double mu_d = 0.0;       // repair rate
};

struct RafResult {
  bool unbounded = false;
  double raf = 0.0;
  double mtbf_original = 0.0;  // in units of 1/lambda_D (lambda_D == 1)
  double mtbf_ft = 0.0;
};

/// System fault rate composed from component profiles:
/// sum of f_i * OR_i * AR_i * lambda_unit. Throws std::invalid_argument on
/// an empty component list or non-positive lambda_unit.
double system_fault_rate(const std::vector<ComponentProfile>& components,
                         double lambda_unit);

/// Closed-form reliability acceleration: 1 / (f_D*OR_D*AR_D + OR_C*AR_C).
/// The corrector's f field is ignored. A zero denominator yields an
/// unbounded result rather than an error.
RafResult raf_closed_form(const ComponentProfile& protected_module,
                          const ComponentProfile& corrector);

/// RAF as the ratio of absorbing-chain MTBFs of two models. Infinite or
/// zero MTBFs are reported through the unbounded flag / zero raf.
RafResult raf_from_markov(const markov::MarkovModel& original,
                          const markov::MarkovModel& ft);

/// Single-failure-state reference model: S0 --lambda--> FAIL.
markov::MarkovModel simplex_model(double lambda);

/// Protected-system model: S0 --lambda_d1--> REPAIR --mu_d--> S0,
/// S0 --lambda_d2--> FAIL, S0 --lambda_c--> CORR_FAIL; healthy {S0, REPAIR}.
/// Edges with zero rate are omitted.
markov::MarkovModel ft_model(const FtSystemRates& rates);

/// Triple-replica majority chain: S0 --3*lambda--> S1 --2*lambda--> FAIL,
/// healthy {S0, S1}. MTBF is 5/(6*lambda).
markov::MarkovModel tmr_model(double lambda);

}  // namespace nocres::raf

#endif  // NOCRES_RAF_HPP
