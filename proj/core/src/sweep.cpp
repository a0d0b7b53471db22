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

#include "nocres/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <iomanip>
#include <thread>

namespace nocres::sweep {

const char* const kCsvHeader =
    "benchmark,mode,p_npc,p_sa,seed,sent,delivered,misrouted,undelivered,"
    "avg_delay,throughput,finish_time,first_failure_cycle,faults_injected,"
    "faults_detected,faults_recovered,silent_corruptions,incomplete";

const char* pattern_name(noc::TrafficPattern p) {
  switch (p) {
    case noc::TrafficPattern::kUniform: return "uniform";
    case noc::TrafficPattern::kTranspose: return "transpose";
    case noc::TrafficPattern::kMatmul: return "matmul";
  }
  return "?";
}

const char* mode_name(noc::ProtectionMode m) {
  switch (m) {
    case noc::ProtectionMode::kBaseline: return "baseline";
    case noc::ProtectionMode::kTmr: return "tmr";
    case noc::ProtectionMode::kSera: return "sera";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (benchmarks.empty()) throw io::ConfigError("field 'sweep.benchmarks': empty");
  if (modes.empty()) throw io::ConfigError("field 'sweep.modes': empty");
  if (rates.empty()) throw io::ConfigError("field 'sweep.rates': empty");
  if (seeds.empty()) throw io::ConfigError("field 'sweep.seeds': empty");
  for (const RatePoint& r : rates)
    if (r.p_npc < 0.0 || r.p_npc > 1.0 || r.p_sa < 0.0 || r.p_sa > 1.0)
      throw io::ConfigError("field 'sweep.rates': probabilities must be in [0,1]");
  mesh.validate();
}

std::string csv_row(noc::TrafficPattern benchmark, noc::ProtectionMode mode,
                    const RatePoint& rate, std::uint64_t seed,
                    const noc::RunMetrics& m) {
  std::string row;
  row += pattern_name(benchmark);
  row += ',';
  row += mode_name(mode);
  row += ',' + fmt(rate.p_npc) + ',' + fmt(rate.p_sa);
  row += ',' + std::to_string(seed);
  row += ',' + std::to_string(m.sent);
  row += ',' + std::to_string(m.delivered);
  row += ',' + std::to_string(m.misrouted);
  row += ',' + std::to_string(m.undelivered);
  row += ',';
  if (m.avg_delay_defined) row += fmt(m.avg_delay);
  row += ',' + fmt(m.throughput);
  row += ',' + std::to_string(m.finish_time);
  row += ',';
  if (m.first_failure_cycle) row += std::to_string(*m.first_failure_cycle);
  row += ',' + std::to_string(m.prot.faults_injected);
  row += ',' + std::to_string(m.prot.faults_detected);
  row += ',' + std::to_string(m.prot.faults_recovered);
  row += ',' + std::to_string(m.prot.silent_corruptions);
  row += ',';
  row += m.incomplete ? '1' : '0';
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config, unsigned threads) {
  config.validate();

  struct RunSpec {
    noc::TrafficPattern benchmark;
    noc::ProtectionMode mode;
    RatePoint rate;
    std::uint64_t seed;
  };
  std::vector<RunSpec> grid;
  for (noc::TrafficPattern b : config.benchmarks)
    for (noc::ProtectionMode m : config.modes)
      for (const RatePoint& r : config.rates)
        for (std::uint64_t s : config.seeds) grid.push_back({b, m, r, s});

  SweepResult result;
  result.metrics.resize(grid.size());
  result.rows.resize(grid.size());

  const auto run_one = [&](std::size_t i) {
    const RunSpec& spec = grid[i];
    noc::MeshConfig mesh = config.mesh;
    mesh.seed = spec.seed;
    noc::TrafficSpec traffic = config.traffic;
    traffic.pattern = spec.benchmark;
    noc::FaultPlan plan;
    plan.p_npc = spec.rate.p_npc;
    plan.p_sa = spec.rate.p_sa;
    plan.mode = config.fault_mode;
    plan.seed = spec.seed;
    noc::RunOptions opts;
    opts.watchdog_cycles = config.watchdog_cycles;
    result.metrics[i] =
        noc::run_benchmark(mesh, traffic, plan, spec.mode, opts);
    result.rows[i] = csv_row(spec.benchmark, spec.mode, spec.rate, spec.seed,
                             result.metrics[i]);
  };

  if (threads <= 1 || grid.size() <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned workers =
        std::min<std::size_t>(threads, grid.size());
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < grid.size();
             i = next.fetch_add(1))
          run_one(i);
      });
    for (std::thread& t : pool) t.join();
  }

  for (const noc::RunMetrics& m : result.metrics)
    if (m.incomplete) result.all_complete = false;
  return result;
}

void print_summary(const ExperimentConfig& config, const SweepResult& result,
                   std::ostream& out) {
  const std::size_t n_seeds = config.seeds.size();
  std::size_t i = 0;
  out << "seed-mean average delay (cycles) and throughput (flits/cycle/node)\n";
  for (noc::TrafficPattern b : config.benchmarks) {
    for (noc::ProtectionMode m : config.modes) {
      out << "\n" << pattern_name(b) << " / " << mode_name(m) << "\n";
      out << "  " << std::left << std::setw(20) << "rate (npc,sa)"
          << std::setw(14) << "avg_delay" << std::setw(14) << "throughput"
          << "delivered\n";
      for (const RatePoint& r : config.rates) {
        double delay = 0.0, tput = 0.0;
        std::uint64_t delivered = 0, sent = 0;
        std::size_t defined = 0;
        for (std::size_t s = 0; s < n_seeds; ++s, ++i) {
          const noc::RunMetrics& mm = result.metrics[i];
          if (mm.avg_delay_defined) {
            delay += mm.avg_delay;
            ++defined;
          }
          tput += mm.throughput;
          delivered += mm.delivered;
          sent += mm.sent;
        }
        char label[48];
        std::snprintf(label, sizeof(label), "%.4g%% & %.4g%%", r.p_npc * 100,
                      r.p_sa * 100);
        out << "  " << std::left << std::setw(20) << label << std::setw(14)
            << (defined ? fmt(delay / static_cast<double>(defined)) : "-")
            << std::setw(14) << fmt(tput / static_cast<double>(n_seeds))
            << delivered << "/" << sent << "\n";
      }
    }
  }
}

std::vector<RafRow> raf_report(const std::vector<io::MechanismSpec>& specs) {
  constexpr double kRepairRate = 1e9;  // effectively instantaneous repair
  std::vector<RafRow> rows;
  for (const io::MechanismSpec& spec : specs) {
    RafRow row;
    row.name = spec.name;
    row.note = spec.note;

    const raf::ComponentProfile protected_module{"D", spec.f_d, spec.or_d,
                                                 spec.ar_d};
    const raf::ComponentProfile corrector{"C", 1.0, spec.or_c, spec.ar_c};
    const raf::RafResult closed = raf_closed_form(protected_module, corrector);
    row.unbounded = closed.unbounded;
    row.raf_closed = closed.raf;

    if (spec.tmr_markov) {
      const raf::RafResult mk =
          raf::raf_from_markov(raf::simplex_model(1.0), raf::tmr_model(1.0));
      row.raf_markov = mk.raf;
    } else if (!closed.unbounded) {
      // Normalized rates: lambda_D(FT) = OR_D * AR_D, split by f_D.
      raf::FtSystemRates rates;
      rates.lambda_d = spec.or_d * spec.ar_d;
      rates.lambda_d2 = spec.f_d * rates.lambda_d;
      rates.lambda_d1 = rates.lambda_d - rates.lambda_d2;
      rates.lambda_c = spec.or_c * spec.ar_c;
      rates.mu_d = kRepairRate;
      const raf::RafResult mk =
          raf::raf_from_markov(raf::simplex_model(1.0), raf::ft_model(rates));
      row.raf_markov = mk.raf;
    }

    if (spec.alt_ar_c) {
      const raf::ComponentProfile alt{"C", 1.0, spec.or_c, *spec.alt_ar_c};
      const raf::RafResult alt_res = raf_closed_form(protected_module, alt);
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "area figures inconsistent: alt ar_c=%.4g gives RAF=%.4g",
                    *spec.alt_ar_c, alt_res.raf);
      if (!row.note.empty()) row.note += "; ";
      row.note += buf;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_raf_report(const std::vector<RafRow>& rows, std::ostream& out,
                      bool csv) {
  if (csv) {
    out << "mechanism,raf_closed_form,raf_markov,unbounded,note\n";
    for (const RafRow& r : rows) {
      out << r.name << ',';
      if (!r.unbounded) out << fmt(r.raf_closed);
      out << ',' << fmt(r.raf_markov) << ',' << (r.unbounded ? '1' : '0')
          << ',' << r.note << "\n";
    }
    return;
  }
  out << std::left << std::setw(18) << "mechanism" << std::setw(14)
      << "RAF(closed)" << std::setw(14) << "RAF(markov)" << "notes\n";
  for (const RafRow& r : rows) {
    out << std::left << std::setw(18) << r.name << std::setw(14)
        << (r.unbounded ? std::string("unbounded") : fmt(r.raf_closed))
        << std::setw(14) << fmt(r.raf_markov) << r.note << "\n";
  }
}

}  // namespace nocres::sweep
