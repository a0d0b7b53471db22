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

#ifndef NOCRES_SWEEP_HPP
#define NOCRES_SWEEP_HPP

#include <ostream>
#include <string>
#include <vector>

#include "nocres/model_io.hpp"
#include "nocres/raf.hpp"
#include "nocres/traffic.hpp"

namespace nocres::sweep {

struct RatePoint {
  double p_npc = 0.0;
  double p_sa = 0.0;
};

struct ExperimentConfig {
  noc::MeshConfig mesh;
  noc::TrafficSpec traffic;
  noc::FaultMode fault_mode = noc::FaultMode::kSinglePerTriple;
  std::vector<noc::TrafficPattern> benchmarks;
  std::vector<noc::ProtectionMode> modes;
  std::vector<RatePoint> rates;
  std::vector<std::uint64_t> seeds;
  std::uint64_t watchdog_cycles = 1'000'000;

  void validate() const;  // throws io::ConfigError naming the bad field
};

/// Fixed CSV schema, one data row per run.
extern const char* const kCsvHeader;

std::string csv_row(noc::TrafficPattern benchmark, noc::ProtectionMode mode,
                    const RatePoint& rate, std::uint64_t seed,
                    const noc::RunMetrics& metrics);

struct SweepResult {
  std::vector<std::string> rows;  // deterministic config-list order
  std::vector<noc::RunMetrics> metrics;  // same order as rows
  bool all_complete = true;
};

/// Runs the full benchmark x mode x rate x seed grid. Independent runs may
/// execute on up to `threads` workers; rows come back in config order
/// regardless of completion order.
SweepResult run_sweep(const ExperimentConfig& config, unsigned threads = 1);

/// Seed-mean delay and throughput per (benchmark, mode, rate), printed as
/// an aligned table.
void print_summary(const ExperimentConfig& config, const SweepResult& result,
                   std::ostream& out);

const char* pattern_name(noc::TrafficPattern p);
const char* mode_name(noc::ProtectionMode m);

/// Per-mechanism RAF comparison from a profiles file: closed form plus the
/// Markov-chain cross-check, with notes for flagged ambiguities.
struct RafRow {
  std::string name;
  bool unbounded = false;
  double raf_closed = 0.0;
  double raf_markov = 0.0;
  std::string note;
};

std::vector<RafRow> raf_report(const std::vector<io::MechanismSpec>& specs);
void print_raf_report(const std::vector<RafRow>& rows, std::ostream& out,
                      bool csv = false);

}  // namespace nocres::sweep

#endif  // NOCRES_SWEEP_HPP
