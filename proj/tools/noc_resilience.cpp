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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nocres/model_io.hpp"
#include "nocres/sweep.hpp"

namespace {

using nocres::io::Config;
using nocres::io::ConfigError;
namespace noc = nocres::noc;
namespace sweep = nocres::sweep;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitIo = 3;

noc::TrafficPattern pattern_from(const std::string& s) {
  if (s == "uniform") return noc::TrafficPattern::kUniform;
  if (s == "transpose") return noc::TrafficPattern::kTranspose;
  if (s == "matmul") return noc::TrafficPattern::kMatmul;
  throw ConfigError("unknown traffic pattern '" + s +
                    "' (uniform|transpose|matmul)");
}

noc::ProtectionMode mode_from(const std::string& s) {
  if (s == "baseline") return noc::ProtectionMode::kBaseline;
  if (s == "tmr") return noc::ProtectionMode::kTmr;
  if (s == "sera") return noc::ProtectionMode::kSera;
  throw ConfigError("unknown protection mode '" + s + "' (baseline|tmr|sera)");
}

noc::FaultMode fault_mode_from(const std::string& s) {
  if (s == "single_per_triple") return noc::FaultMode::kSinglePerTriple;
  if (s == "independent") return noc::FaultMode::kIndependent;
  throw ConfigError("unknown fault mode '" + s +
                    "' (single_per_triple|independent)");
}

sweep::RatePoint rate_from(const std::string& s) {
  sweep::RatePoint r;
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      r.p_npc = r.p_sa = std::stod(s);
    } else {
      r.p_npc = std::stod(s.substr(0, colon));
      r.p_sa = std::stod(s.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw ConfigError("field 'sweep.rates': bad rate '" + s +
                      "' (use p or p_npc:p_sa)");
  }
  return r;
}

std::vector<std::uint64_t> seeds_from(const std::vector<std::string>& items) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& s : items) {
    const auto dots = s.find("..");
    try {
      if (dots == std::string::npos) {
        seeds.push_back(std::stoull(s));
      } else {
        const std::uint64_t lo = std::stoull(s.substr(0, dots));
        const std::uint64_t hi = std::stoull(s.substr(dots + 2));
        for (std::uint64_t v = lo; v <= hi; ++v) seeds.push_back(v);
      }
    } catch (const std::exception&) {
      throw ConfigError("field 'sweep.seeds': bad entry '" + s + "'");
    }
  }
  return seeds;
}

noc::MeshConfig mesh_from(const Config& cfg) {
  noc::MeshConfig mesh;
  const auto dims = cfg.get_list("mesh.dims");
  if (!dims.empty()) {
    if (dims.size() != 3)
      throw ConfigError("field 'mesh.dims': expected three integers");
    mesh.dims = {std::stoi(dims[0]), std::stoi(dims[1]), std::stoi(dims[2])};
  }
  mesh.buffer_depth = static_cast<int>(cfg.get_int("mesh.buffer_depth", 4));
  mesh.packet_length = static_cast<int>(cfg.get_int("mesh.packet_length", 5));
  mesh.mode = mode_from(cfg.get_string("mesh.mode", "baseline"));
  mesh.seed = static_cast<std::uint64_t>(cfg.get_int("mesh.seed", 1));
  return mesh;
}

noc::TrafficSpec traffic_from(const Config& cfg, const noc::MeshConfig& mesh) {
  noc::TrafficSpec t;
  t.pattern = pattern_from(cfg.get_string("traffic.pattern", "uniform"));
  t.packets_per_node =
      static_cast<int>(cfg.get_int("traffic.packets_per_node", 8));
  t.packet_length = static_cast<int>(
      cfg.get_int("traffic.packet_length", mesh.packet_length));
  t.injection_interval =
      static_cast<int>(cfg.get_int("traffic.injection_interval", 20));
  return t;
}

noc::FaultPlan fault_from(const Config& cfg) {
  noc::FaultPlan plan;
  plan.p_npc = cfg.get_double("fault.p_npc", 0.0);
  plan.p_sa = cfg.get_double("fault.p_sa", 0.0);
  plan.mode = fault_mode_from(cfg.get_string("fault.mode", "single_per_triple"));
  plan.seed = static_cast<std::uint64_t>(
      cfg.get_int("fault.seed", static_cast<long long>(
                                    cfg.get_int("mesh.seed", 1))));
  return plan;
}

unsigned sweep_threads() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("NOC_RESILIENCE_THREADS")) {
    try {
      const unsigned cap = static_cast<unsigned>(std::stoul(env));
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
      throw ConfigError("NOC_RESILIENCE_THREADS: not a positive integer");
    }
  }
  return n;
}

noc::TraceSink stderr_trace() {
  return [](std::uint64_t cycle, const noc::Coord& router, const char* event,
            noc::Port port, std::uint64_t packet_id, std::uint32_t seq) {
    std::cerr << cycle << ',' << noc::to_string(router) << ',' << event << ','
              << noc::port_name(port) << ',' << packet_id << ',' << seq
              << '\n';
  };
}

int cmd_simulate(const Config& cfg, const std::string& out_path, bool trace) {
  const noc::MeshConfig mesh = mesh_from(cfg);
  const noc::TrafficSpec traffic = traffic_from(cfg, mesh);
  const noc::FaultPlan plan = fault_from(cfg);
  noc::RunOptions opts;
  opts.watchdog_cycles = static_cast<std::uint64_t>(
      cfg.get_int("run.watchdog", 1'000'000));
  if (trace || cfg.get_bool("run.trace", false)) opts.trace = stderr_trace();

  const noc::RunMetrics m =
      noc::run_benchmark(mesh, traffic, plan, mesh.mode, opts);

  const sweep::RatePoint rate{plan.p_npc, plan.p_sa};
  std::ostringstream csv;
  csv << sweep::kCsvHeader << "\n"
      << sweep::csv_row(traffic.pattern, mesh.mode, rate, mesh.seed, m) << "\n";
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitIo;
    }
    out << csv.str();
    std::cout << "wrote " << out_path << "\n";
  }
  std::cout << "sent=" << m.sent << " delivered=" << m.delivered
            << " misrouted=" << m.misrouted << " undelivered=" << m.undelivered
            << " avg_delay="
            << (m.avg_delay_defined ? std::to_string(m.avg_delay) : "-")
            << " throughput=" << m.throughput
            << " finish_time=" << m.finish_time
            << (m.incomplete ? " [incomplete]" : "") << "\n";
  return m.incomplete ? kExitRuntime : kExitOk;
}

int cmd_sweep(const Config& cfg, const std::string& out_path) {
  sweep::ExperimentConfig exp;
  exp.mesh = mesh_from(cfg);
  exp.traffic = traffic_from(cfg, exp.mesh);
  exp.fault_mode =
      fault_mode_from(cfg.get_string("fault.mode", "single_per_triple"));
  exp.watchdog_cycles =
      static_cast<std::uint64_t>(cfg.get_int("run.watchdog", 1'000'000));

  auto benchmarks = cfg.get_list("sweep.benchmarks");
  if (benchmarks.empty())
    benchmarks = {"uniform", "transpose", "matmul"};
  for (const std::string& b : benchmarks)
    exp.benchmarks.push_back(pattern_from(b));

  auto modes = cfg.get_list("sweep.modes");
  if (modes.empty()) modes = {"baseline", "tmr", "sera"};
  for (const std::string& m : modes) exp.modes.push_back(mode_from(m));

  auto rates = cfg.get_list("sweep.rates");
  if (rates.empty())
    rates = {"0", "0.0833", "0.1111:0.0667", "0.1667", "0.33"};
  for (const std::string& r : rates) exp.rates.push_back(rate_from(r));

  auto seeds = cfg.get_list("sweep.seeds");
  if (seeds.empty()) seeds = {"1..20"};
  exp.seeds = seeds_from(seeds);

  const sweep::SweepResult result = sweep::run_sweep(exp, sweep_threads());

  std::ostream* csv = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitIo;
    }
    csv = &file;
  }
  *csv << sweep::kCsvHeader << "\n";
  for (const std::string& row : result.rows) *csv << row << "\n";
  if (!out_path.empty())
    std::cout << "wrote " << result.rows.size() << " rows to " << out_path
              << "\n";
  sweep::print_summary(exp, result, std::cout);
  return result.all_complete ? kExitOk : kExitRuntime;
}

int cmd_mtbf(const std::string& model_path, std::uint64_t trials,
             std::uint64_t seed) {
  const nocres::io::ModelFile file = nocres::io::load_markov_model(model_path);
  const nocres::markov::MtbfResult res = nocres::markov::solve_mtbf(file.model);
  if (res.infinite) {
    std::cout << "MTBF: infinite (no faulty state reachable)\n";
    return kExitOk;
  }
  std::cout << "MTBF: " << res.mtbf << " " << file.time_unit << "s\n";
  std::cout << "expected sojourn per healthy state:\n";
  for (const auto& [state, time] : res.per_state_sojourn)
    std::cout << "  " << file.model.states()[state].label << ": " << time
              << " " << file.time_unit << "s\n";
  if (trials > 0) {
    const auto sim = nocres::markov::simulate_mtbf(file.model, trials, seed);
    std::cout << "monte carlo (" << trials << " trials, seed " << seed
              << "): " << sim.estimate << " +/- " << sim.stderr_ << "\n";
  }
  return kExitOk;
}

int cmd_raf(const std::string& profiles_path, bool csv) {
  const auto specs = nocres::io::load_profiles(profiles_path);
  const auto rows = sweep::raf_report(specs);
  sweep::print_raf_report(rows, std::cout, csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"3D-mesh NoC resilience simulator and reliability analyzer"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  long long seed_flag = -1;
  bool trace = false;

  app.add_option("--config", config_path, "configuration file")
      ->configurable(false);
  app.add_option("--set", overrides, "override section.key=value (repeatable)");
  app.add_option("--out", out_path, "output path");
  app.add_option("--seed", seed_flag, "override mesh/fault seed");
  app.add_flag("--trace", trace, "emit per-cycle event log to stderr");

  CLI::App* simulate = app.add_subcommand("simulate", "run one benchmark");
  simulate->fallthrough();
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run the benchmark x mode x rate grid");
  sweep_cmd->fallthrough();

  std::string model_path;
  std::uint64_t trials = 0;
  CLI::App* mtbf = app.add_subcommand("mtbf", "solve a Markov model file");
  mtbf->fallthrough();
  mtbf->add_option("model-file", model_path, "model description file")
      ->required();
  mtbf->add_option("--trials", trials, "Monte Carlo cross-check trials");

  std::string profiles_path;
  bool raf_csv = false;
  CLI::App* raf = app.add_subcommand("raf", "mechanism comparison report");
  raf->fallthrough();
  raf->add_option("profiles-file", profiles_path, "component profiles file")
      ->required();
  raf->add_flag("--csv", raf_csv, "emit CSV instead of an aligned table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    Config cfg;
    if (!config_path.empty()) cfg = Config::load(config_path);
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw ConfigError("--set expects section.key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed_flag >= 0) {
      cfg.set("mesh.seed", std::to_string(seed_flag));
      cfg.set("fault.seed", std::to_string(seed_flag));
    }

    if (simulate->parsed()) return cmd_simulate(cfg, out_path, trace);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, out_path);
    if (mtbf->parsed())
      return cmd_mtbf(model_path, trials,
                      seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag)
                                     : 12345);
    if (raf->parsed()) return cmd_raf(profiles_path, raf_csv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nocres::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nocres::markov::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
