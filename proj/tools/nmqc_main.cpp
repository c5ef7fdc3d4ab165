// Copyright 2026 The nmqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: ensemble sweeps, table aggregation, initial-QC
// histograms and verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nmqc/errors.hpp"
#include "nmqc/harness.hpp"
#include "nmqc/records.hpp"
#include "nmqc/run_config.hpp"
#include "nmqc/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct CliState {
  nmqc::RunConfig cfg;
  std::string channel = "dephasing";
  std::string sides = "single";
  std::vector<std::string> measures = {"LN", "QD"};
  std::vector<std::string> record_files;
  std::vector<std::string> suites;
  bool json = false;
  std::string report_path;
  nmqc::VerifyOptions verify;
};

void resolve(CliState& s) {
  s.cfg.kind = nmqc::parse_channel_kind(s.channel);
  s.cfg.sides = nmqc::parse_sides(s.sides);
  s.cfg.measures.clear();
  for (const auto& m : s.measures) s.cfg.measures.push_back(nmqc::parse_measure(m));
  s.cfg.validate();
}

void progress_line(const nmqc::RunProgress& p) {
  std::fprintf(stderr, "\r%llu / %llu states", static_cast<unsigned long long>(p.completed),
               static_cast<unsigned long long>(p.total));
  if (p.completed == p.total) std::fprintf(stderr, "\n");
}

void print_written(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

int cmd_sweep(CliState& s) {
  resolve(s);
  const nmqc::EnsembleOutput out = nmqc::run_ensemble(s.cfg, progress_line);
  if (out.resumed_states > 0) std::cout << "resumed after " << out.resumed_states << " states\n";
  std::cout << "wrote " << out.records_path.string() << "\n";
  print_written(nmqc::emit_tables(out.rows, s.cfg.output_dir));
  return kOk;
}

int cmd_tables(CliState& s) {
  resolve(s);
  std::vector<std::string> files = s.record_files;
  if (files.empty()) files.push_back(nmqc::records_path_for(s.cfg).string());
  std::vector<nmqc::ResultRow> rows;
  for (const auto& f : files) {
    const nmqc::RecordFile file = nmqc::read_records(f);
    const auto part = nmqc::aggregate(file.config, file.records);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  print_written(nmqc::emit_tables(rows, s.cfg.output_dir));
  return kOk;
}

int cmd_hist(CliState& s) {
  resolve(s);
  const auto hists = nmqc::initial_qc_histograms(s.cfg);
  for (const auto& h : hists) {
    std::cout << "rank " << h.rank << " " << nmqc::to_string(h.measure) << ": mean initial value " << h.mean << "\n";
  }
  print_written(nmqc::emit_histograms(hists, s.cfg.output_dir));
  return kOk;
}

int run_suites(CliState& s, const std::vector<nmqc::Suite>& suites) {
  s.verify.seed = s.cfg.master_seed;
  s.verify.workers = s.cfg.workers;
  std::ofstream report;
  if (!s.report_path.empty()) {
    report.open(s.report_path);
    if (!report) throw nmqc::IoError("cannot open report file " + s.report_path);
  }
  bool all_passed = true;
  for (nmqc::Suite suite : suites) {
    const nmqc::SuiteReport r = nmqc::run_suite(suite, s.verify);
    all_passed = all_passed && r.passed();
    if (s.json) {
      std::cout << r.to_json() << "\n";
    } else {
      std::cout << r.to_text();
    }
    if (report.is_open()) report << r.to_json() << "\n";
  }
  if (report.is_open() && !report.flush()) throw nmqc::IoError("write to " + s.report_path + " failed");
  return all_passed ? kOk : kVerificationFailed;
}

int cmd_verify(CliState& s) {
  std::vector<nmqc::Suite> suites;
  for (const auto& name : s.suites) suites.push_back(nmqc::parse_suite(name));
  if (suites.empty()) suites = nmqc::all_suites();
  return run_suites(s, suites);
}

int cmd_show_config(CliState& s) {
  resolve(s);
  std::cout << s.cfg.to_config_text();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CliState s;
  CLI::App app{"nmqc: collapse and revival of entanglement and discord of random two-qubit states "
               "under non-Markovian dephasing and depolarizing noise"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value configuration file");

  auto& cfg = s.cfg;
  app.add_option("--channel", s.channel, "dephasing or depolarizing")->capture_default_str();
  app.add_option("--sides", s.sides, "single or double")->capture_default_str();
  app.add_option("--rank", cfg.rank, "rank of the random input states (1-4)")->capture_default_str();
  app.add_option("--ensemble_count", cfg.ensemble_count, "states per ensemble")->capture_default_str();
  app.add_option("--master_seed", cfg.master_seed, "64-bit master seed")->capture_default_str();
  app.add_option("--grid_steps", cfg.grid_steps, "p-grid intervals")->capture_default_str();
  app.add_option("--zero_threshold", cfg.zero_threshold, "values below this count as zero")->capture_default_str();
  app.add_option("--measures", s.measures, "LN and/or QD")->capture_default_str();
  app.add_option("--alpha_list", cfg.alpha_list, "non-Markovianity values")->capture_default_str();
  app.add_option("--theta_steps", cfg.optimizer.theta_steps, "discord coarse grid, polar cells")->capture_default_str();
  app.add_option("--phi_steps", cfg.optimizer.phi_steps, "discord coarse grid, azimuthal cells")->capture_default_str();
  app.add_option("--refine_starts", cfg.optimizer.refine_starts, "simplex refinements from the best cells")
      ->capture_default_str();
  app.add_option("--refine_tolerance", cfg.optimizer.tolerance, "simplex stopping spread, bits")
      ->capture_default_str();
  app.add_option("--max_iterations", cfg.optimizer.max_iterations, "simplex iteration cap")->capture_default_str();
  app.add_option("--output_dir", cfg.output_dir, "directory for records and CSV files")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads (0: hardware concurrency)")->capture_default_str();
  app.add_flag("--resume", cfg.resume, "continue an interrupted sweep from its record file");
  app.add_option("--hist_bin_width", cfg.hist_bin_width, "initial-QC histogram bin width")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "run an ensemble and write records and tables")->fallthrough();
  auto* tables = app.add_subcommand("tables", "aggregate persisted records into CSV tables")->fallthrough();
  tables->add_option("records", s.record_files, "record files (default: the configured run's file)");
  auto* hist = app.add_subcommand("hist", "initial-QC distributions")->fallthrough();
  auto* verify_prop =
      app.add_subcommand("verify-proposition", "Bell-diagonal no-revival oracle check")->fallthrough();
  auto* verify = app.add_subcommand("verify", "run verification suites")->fallthrough();
  verify->add_option("suites", s.suites, "proposition, channels, measures, determinism (default: all)");
  for (auto* sub : {verify_prop, verify}) {
    sub->add_flag("--json", s.json, "machine-readable report on stdout");
    sub->add_option("--report", s.report_path, "also write the JSON report to this file");
    sub->add_option("--states", s.verify.random_states, "random states per rank for ensemble surveys")
        ->capture_default_str();
  }
  auto* show = app.add_subcommand("show-config", "print the resolved configuration")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(s);
    if (tables->parsed()) return cmd_tables(s);
    if (hist->parsed()) return cmd_hist(s);
    if (verify_prop->parsed()) return run_suites(s, {nmqc::Suite::Proposition});
    if (verify->parsed()) return cmd_verify(s);
    if (show->parsed()) return cmd_show_config(s);
  } catch (const nmqc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}
