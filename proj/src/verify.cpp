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

#include "nmqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "nmqc/errors.hpp"
#include "nmqc/harness.hpp"
#include "nmqc/measures.hpp"
#include "nmqc/random_states.hpp"
#include "nmqc/reference_oracles.hpp"

namespace nmqc {

namespace {

CheckResult make_check(std::string name, bool passed, std::string detail) {
  return CheckResult{std::move(name), passed, std::move(detail)};
}

std::string sci(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

const Matrix4c& swap_gate() {
  static const Matrix4c s = [] {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
    return m;
  }();
  return s;
}

TwoQubitState single_sided_on_b(const TwoQubitState& rho, const ChannelConfig& cfg, double p) {
  const Matrix4c& s = swap_gate();
  const TwoQubitState swapped = TwoQubitState::trusted(s * rho.matrix() * s);
  return TwoQubitState::trusted(s * apply_single_sided(swapped, cfg, p).matrix() * s);
}

// --- proposition -----------------------------------------------------------

void proposition_suite(const VerifyOptions& opt, SuiteReport& report) {
  for (Sides sides : {Sides::Single, Sides::Double}) {
    const PropositionReport r = verify_proposition(sides);
    std::ostringstream detail;
    detail << r.czz_points << "x" << r.p_points << " grid, max eigenvalue error " << sci(r.max_eigenvalue_error)
           << ", max collapse offset " << r.max_collapse_error << " (grid step " << r.grid_step << "), "
           << r.collapse_mismatches << " collapse mismatches, " << r.revivals << " revivals";
    for (std::size_t k = 0; k < std::min<std::size_t>(3, r.violations.size()); ++k) {
      detail << "; " << r.violations[k];
    }
    report.checks.push_back(make_check("bell_diagonal_dephasing_" + std::string(to_string(sides)), r.passed(),
                                       detail.str()));
  }

  for (Sides sides : {Sides::Single, Sides::Double}) {
    std::uint64_t revived = 0;
    std::uint64_t states = 0;
    for (int rank = 1; rank <= 4; ++rank) {
      const RevivalSurvey s = survey_markovian_revivals(ChannelKind::Depolarizing, sides, rank, opt.random_states,
                                                        opt.seed, 500, Measure::LogNegativity);
      revived += s.revived;
      states += s.states;
    }
    std::ostringstream detail;
    detail << states << " random states (ranks 1-4), " << revived << " LN revivals";
    report.checks.push_back(make_check("markovian_depolarizing_ln_" + std::string(to_string(sides)),
                                       revived == 0, detail.str()));
  }

  // Discord of Bell-diagonal states under Markovian dephasing stays zero once it vanishes.
  const std::uint64_t bd_states = std::min<std::uint64_t>(opt.oracle_states, 100);
  for (Sides sides : {Sides::Single, Sides::Double}) {
    const ChannelConfig cfg{ChannelKind::Dephasing, 0.0, sides};
    const SweepGrid grid = SweepGrid::for_channel(ChannelKind::Dephasing, 100);
    std::uint64_t collapsed = 0;
    std::uint64_t revived = 0;
    for (std::uint64_t i = 0; i < bd_states; ++i) {
      const EventRecord rec =
          detect_events(sweep(random_bell_diagonal(opt.seed, i), cfg, grid, Measure::Discord));
      collapsed += rec.collapsed ? 1 : 0;
      revived += rec.regenerated ? 1 : 0;
    }
    std::ostringstream detail;
    detail << bd_states << " Bell-diagonal states, " << collapsed << " QD collapses, " << revived << " revivals";
    report.checks.push_back(make_check("markovian_dephasing_bd_qd_" + std::string(to_string(sides)),
                                       revived == 0, detail.str()));
  }
}

// --- channels --------------------------------------------------------------

void channels_suite(const VerifyOptions& opt, SuiteReport& report) {
  const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  constexpr int kPoints = 100;
  double max_trace = 0.0;
  double max_herm = 0.0;
  double max_diag = 0.0;
  double max_compose = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t psd_negative_regime = 0;
  std::uint64_t psd_elsewhere = 0;
  double worst_elsewhere = 0.0;

  for (std::uint64_t i = 0; i < opt.channel_states; ++i) {
    const int rank = static_cast<int>(i % 4) + 1;
    const TwoQubitState rho = sample_state(RandomStateSpec{rank, opt.channel_states, opt.seed}, i);
    for (ChannelKind kind : {ChannelKind::Dephasing, ChannelKind::Depolarizing}) {
      for (double alpha : alphas) {
        for (int k = 0; k < kPoints; ++k) {
          const double p = max_noise(kind) * k / (kPoints - 1);
          const PauliChannelWeights w = channel_weights(kind, alpha, p);
          const bool negative_regime = std::min({w.identity, w.x, w.y, w.z}) < 0.0;
          for (Sides sides : {Sides::Single, Sides::Double}) {
            const ChannelConfig cfg{kind, alpha, sides};
            const TwoQubitState out = apply_channel(rho, cfg, p);
            const StateCheck c = out.check();
            max_trace = std::max(max_trace, c.trace_defect);
            max_herm = std::max(max_herm, c.hermiticity_defect);
            ++evaluations;
            if (!c.positive()) {
              if (negative_regime) {
                ++psd_negative_regime;
              } else {
                ++psd_elsewhere;
                worst_elsewhere = std::min(worst_elsewhere, c.min_eigenvalue);
              }
            }
            if (kind == ChannelKind::Dephasing) {
              max_diag = std::max(max_diag, (out.matrix().diagonal() - rho.matrix().diagonal()).cwiseAbs().maxCoeff());
            }
            if (sides == Sides::Double) {
              const ChannelConfig single{kind, alpha, Sides::Single};
              const TwoQubitState seq = single_sided_on_b(apply_single_sided(rho, single, p), single, p);
              max_compose = std::max(max_compose, (seq.matrix() - out.matrix()).cwiseAbs().maxCoeff());
            }
          }
        }
      }
    }
  }

  std::ostringstream grid;
  grid << evaluations << " outputs (" << opt.channel_states << " states, 2 kinds, 2 sides, 5 alphas, " << kPoints
       << " p-points)";
  report.checks.push_back(make_check("trace_preservation", max_trace <= tol::kTrace,
                                     grid.str() + ", max |tr - 1| " + sci(max_trace)));
  report.checks.push_back(make_check("hermiticity_preservation", max_herm <= tol::kHermiticity,
                                     "max hermiticity defect " + sci(max_herm)));
  report.checks.push_back(make_check("dephasing_keeps_diagonal", max_diag <= 1e-12,
                                     "max diagonal change " + sci(max_diag)));
  report.checks.push_back(make_check("double_equals_sequential_single", max_compose <= 1e-12,
                                     "max elementwise difference " + sci(max_compose)));
  std::ostringstream psd;
  psd << psd_negative_regime << " non-PSD outputs inside the negative-weight regime (logged, expected), "
      << psd_elsewhere << " elsewhere";
  if (psd_elsewhere > 0) psd << " (worst eigenvalue " << sci(worst_elsewhere) << ")";
  report.checks.push_back(make_check("positivity_outside_negative_weights", psd_elsewhere == 0, psd.str()));
}

// --- measures --------------------------------------------------------------

void measures_suite(const VerifyOptions& opt, SuiteReport& report) {
  const QubitState up = QubitState::trusted((Matrix2c() << 1, 0, 0, 0).finished());
  const QubitState plus = QubitState::trusted((Matrix2c() << 0.5, 0.5, 0.5, 0.5).finished());
  const TwoQubitState product = product_state(up, plus);

  struct Golden {
    const char* name;
    double value;
    double expected;
    double tolerance;
  };
  const Golden golden[] = {
      {"ln_phi_plus", log_negativity(phi_plus()), 1.0, 1e-8},
      {"qd_phi_plus", quantum_discord(phi_plus()).discord, 1.0, 1e-8},
      {"ln_product", log_negativity(product), 0.0, 1e-8},
      {"qd_product", quantum_discord(product).discord, 0.0, 1e-8},
      {"ln_ket00", log_negativity(ket00()), 0.0, 1e-8},
      {"qd_ket00", quantum_discord(ket00()).discord, 0.0, 1e-8},
      {"ln_werner_half", log_negativity(werner(0.5)), std::log2(1.25), 1e-10},
  };
  for (const Golden& g : golden) {
    const double err = std::abs(g.value - g.expected);
    std::ostringstream detail;
    detail.precision(12);
    detail << "value " << g.value << ", expected " << g.expected << ", |error| " << sci(err);
    report.checks.push_back(make_check(g.name, err <= g.tolerance, detail.str()));
  }

  double worst = 0.0;
  for (std::uint64_t i = 0; i < opt.oracle_states; ++i) {
    const TwoQubitState rho = random_bell_diagonal(opt.seed ^ 0x5eedULL, i);
    const double fast = quantum_discord(rho).discord;
    const double dense = dense_grid_discord(rho).discord;
    worst = std::max(worst, std::abs(fast - dense));
  }
  std::ostringstream detail;
  detail << opt.oracle_states << " Bell-diagonal states, max |optimizer - dense grid| " << sci(worst);
  report.checks.push_back(make_check("discord_optimizer_vs_dense_grid", worst <= 1e-4, detail.str()));
}

// --- determinism -----------------------------------------------------------

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::filesystem::path> run_and_emit(RunConfig cfg, const std::filesystem::path& dir) {
  cfg.output_dir = dir.string();
  const EnsembleOutput out = run_ensemble(cfg);
  auto files = emit_tables(out.rows, dir);
  files.push_back(out.records_path);
  return files;
}

bool same_bytes(const std::vector<std::filesystem::path>& a, const std::vector<std::filesystem::path>& b,
                std::string& first_difference) {
  if (a.size() != b.size()) {
    first_difference = "different file sets";
    return false;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (slurp(a[k]) != slurp(b[k])) {
      first_difference = a[k].filename().string();
      return false;
    }
  }
  return true;
}

void determinism_suite(const VerifyOptions& opt, SuiteReport& report) {
  RunConfig cfg;
  cfg.kind = ChannelKind::Dephasing;
  cfg.sides = Sides::Double;
  cfg.rank = 2;
  cfg.ensemble_count = 40;
  cfg.master_seed = opt.seed;
  cfg.grid_steps = 50;
  cfg.alpha_list = {0.5, 0.9};

  const auto root = opt.scratch_dir;
  std::filesystem::remove_all(root);

  cfg.workers = 1;
  const auto serial = run_and_emit(cfg, root / "serial");
  cfg.workers = 3;
  const auto parallel = run_and_emit(cfg, root / "parallel");
  std::string diff;
  const bool workers_ok = same_bytes(serial, parallel, diff);
  report.checks.push_back(make_check("worker_count_independent", workers_ok,
                                     workers_ok ? "1 and 3 workers give byte-identical CSV and records"
                                                : "first differing file: " + diff));

  // An interrupted run (first half only) resumed to completion matches a clean run.
  RunConfig half = cfg;
  half.ensemble_count = cfg.ensemble_count / 2;
  half.output_dir = (root / "resumed").string();
  run_ensemble(half);
  {
    // Simulate a crash mid-write: a truncated trailing line.
    std::ofstream tail(records_path_for(half), std::ios::app);
    tail << "{\"index\": 20, \"alp";
  }
  RunConfig resumed = cfg;
  resumed.resume = true;
  resumed.output_dir = half.output_dir;
  const EnsembleOutput finished = run_ensemble(resumed);
  auto resumed_files = emit_tables(finished.rows, root / "resumed");
  resumed_files.push_back(finished.records_path);
  const bool resume_ok = same_bytes(serial, resumed_files, diff) && finished.resumed_states == half.ensemble_count;
  std::ostringstream detail;
  detail << "resumed after " << finished.resumed_states << " of " << cfg.ensemble_count << " states; "
         << (resume_ok ? "outputs identical to an uninterrupted run" : "first differing file: " + diff);
  report.checks.push_back(make_check("resume_matches_clean_run", resume_ok, detail.str()));

  const RandomStateSpec spec{3, 10, opt.seed};
  bool states_ok = true;
  for (std::uint64_t i = 0; i < 10; ++i) {
    states_ok = states_ok && sample_state(spec, i).matrix() == sample_state(spec, i).matrix();
  }
  report.checks.push_back(
      make_check("state_streams_reproducible", states_ok, "sample_state is a pure function of (seed, index)"));
  std::filesystem::remove_all(root);
}

}  // namespace

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Proposition: return "proposition";
    case Suite::Channels: return "channels";
    case Suite::Measures: return "measures";
    case Suite::Determinism: return "determinism";
  }
  return "?";
}

Suite parse_suite(std::string_view text) {
  for (Suite s : all_suites()) {
    if (text == to_string(s)) return s;
  }
  throw ConfigError("unknown verification suite '" + std::string(text) + "'");
}

std::vector<Suite> all_suites() {
  return {Suite::Proposition, Suite::Channels, Suite::Measures, Suite::Determinism};
}

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "suite " << to_string(suite) << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks) {
    out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  return out.str();
}

std::string SuiteReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  return nlohmann::json{{"suite", std::string(to_string(suite))}, {"passed", passed()}, {"checks", checks_json}}
      .dump();
}

SuiteReport run_suite(Suite suite, const VerifyOptions& options) {
  SuiteReport report;
  report.suite = suite;
  switch (suite) {
    case Suite::Proposition: proposition_suite(options, report); break;
    case Suite::Channels: channels_suite(options, report); break;
    case Suite::Measures: measures_suite(options, report); break;
    case Suite::Determinism: determinism_suite(options, report); break;
  }
  return report;
}

}  // namespace nmqc
