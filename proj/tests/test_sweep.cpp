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

#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "nocres/sweep.hpp"

using namespace nocres::sweep;
using namespace nocres::noc;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.mesh.dims = {2, 2, 2};
  cfg.traffic.packets_per_node = 3;
  cfg.traffic.packet_length = 3;
  cfg.traffic.injection_interval = 6;
  cfg.benchmarks = {TrafficPattern::kUniform, TrafficPattern::kTranspose};
  cfg.modes = {ProtectionMode::kBaseline, ProtectionMode::kSera};
  cfg.rates = {{0.0, 0.0}, {0.1667, 0.1667}};
  cfg.seeds = {1, 2, 3};
  return cfg;
}

}  // namespace

TEST_CASE("csv rows follow the fixed schema") {
  RunMetrics m;
  m.sent = 10;
  m.delivered = 9;
  m.misrouted = 1;
  m.undelivered = 0;
  m.avg_delay_defined = true;
  m.avg_delay = 20.505;
  m.throughput = 0.015625;
  m.finish_time = 481;
  m.first_failure_cycle = 77;
  m.prot.faults_injected = 5;
  m.prot.faults_detected = 4;
  m.prot.faults_recovered = 4;
  const std::string row = csv_row(TrafficPattern::kTranspose,
                                  ProtectionMode::kSera, {0.0833, 0.0}, 7, m);
  CHECK(row ==
        "transpose,sera,0.0833,0,7,10,9,1,0,20.505,0.015625,481,77,5,4,4,0,0");

  // Undefined delay and absent failure cycle leave their fields empty.
  RunMetrics empty;
  const std::string row2 = csv_row(TrafficPattern::kUniform,
                                   ProtectionMode::kBaseline, {0, 0}, 1, empty);
  CHECK(row2 == "uniform,baseline,0,0,1,0,0,0,0,,0,0,,0,0,0,0,0");

  const std::string header(kCsvHeader);
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(row.begin(), row.end(), ','));
}

TEST_CASE("the sweep grid is ordered benchmark, mode, rate, seed") {
  ExperimentConfig cfg = tiny_config();
  const SweepResult r = run_sweep(cfg);
  REQUIRE(r.rows.size() == 2 * 2 * 2 * 3);
  CHECK(r.rows[0].rfind("uniform,baseline,0,0,1,", 0) == 0);
  CHECK(r.rows[1].rfind("uniform,baseline,0,0,2,", 0) == 0);
  CHECK(r.rows[3].rfind("uniform,baseline,0.1667,0.1667,1,", 0) == 0);
  CHECK(r.rows[6].rfind("uniform,sera,", 0) == 0);
  CHECK(r.rows[12].rfind("transpose,baseline,", 0) == 0);
  CHECK(r.all_complete);
  // The benchmark column must drive the generated traffic, not just the
  // label: matching cells of different patterns see different delays.
  CHECK(r.metrics[0].avg_delay != r.metrics[12].avg_delay);
}

TEST_CASE("parallel sweeps reproduce the serial rows exactly") {
  ExperimentConfig cfg = tiny_config();
  const SweepResult serial = run_sweep(cfg, 1);
  const SweepResult parallel = run_sweep(cfg, 4);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i)
    CHECK(serial.rows[i] == parallel.rows[i]);
}

TEST_CASE("sweep validation names the offending field") {
  ExperimentConfig cfg = tiny_config();
  cfg.rates = {{1.5, 0.0}};
  try {
    run_sweep(cfg);
    FAIL("expected ConfigError");
  } catch (const nocres::io::ConfigError& e) {
    CHECK(std::string(e.what()).find("sweep.rates") != std::string::npos);
  }
  cfg.rates.clear();
  CHECK_THROWS_AS(run_sweep(cfg), nocres::io::ConfigError);
}

TEST_CASE("summary aggregates seed means per cell") {
  ExperimentConfig cfg = tiny_config();
  const SweepResult r = run_sweep(cfg);
  std::ostringstream out;
  print_summary(cfg, r, out);
  const std::string text = out.str();
  CHECK(text.find("uniform / baseline") != std::string::npos);
  CHECK(text.find("transpose / sera") != std::string::npos);
  // 8 nodes x 3 packets x 3 seeds per cell
  CHECK(text.find("72/72") != std::string::npos);
}

TEST_CASE("the mechanism comparison reproduces the reference numbers") {
  std::istringstream profiles(
      "[mechanism tmr]\n"
      "model = tmr-markov\n"
      "f_d = 0\n"
      "ar_c = 2.0433\n"
      "alt_ar_c = 0.0433\n"
      "[mechanism yu]\n"
      "f_d = 0\n"
      "ar_c = 0.09\n"
      "[mechanism prodromou]\n"
      "f_d = 1\n"
      "ar_c = 0.03\n"
      "[mechanism proposal]\n"
      "f_d = 0\n"
      "ar_c = 0.5446\n");
  const auto rows = raf_report(nocres::io::parse_profiles(profiles));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].raf_markov == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(rows[0].note.find("alt ar_c") != std::string::npos);
  CHECK(rows[1].raf_closed == doctest::Approx(11.111).epsilon(1e-4));
  CHECK(rows[2].raf_closed == doctest::Approx(0.971).epsilon(2e-4));
  CHECK(rows[3].raf_closed == doctest::Approx(1.836).epsilon(3e-4));
  // Closed form and chain agree when the chain uses instantaneous repair.
  for (const RafRow& row : rows) {
    if (row.unbounded || row.name == "tmr") continue;
    CHECK(row.raf_markov == doctest::Approx(row.raf_closed).epsilon(1e-6));
  }

  std::ostringstream table;
  print_raf_report(rows, table);
  CHECK(table.str().find("proposal") != std::string::npos);
  std::ostringstream csv;
  print_raf_report(rows, csv, true);
  CHECK(csv.str().rfind("mechanism,", 0) == 0);
}
