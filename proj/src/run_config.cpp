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

#include "nmqc/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <thread>

#include "nmqc/errors.hpp"

namespace nmqc {

namespace {

// Shortest text that parses back to the same double.
std::string format_real(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

int RunConfig::resolved_workers() const {
  if (workers > 0) return workers;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void RunConfig::validate() const {
  if (rank < 1 || rank > 4) throw ConfigError("rank must be 1, 2, 3 or 4");
  if (ensemble_count == 0) throw ConfigError("ensemble_count must be positive");
  if (grid_steps < 1) throw ConfigError("grid_steps must be positive");
  if (!(zero_threshold > 0.0)) throw ConfigError("zero_threshold must be positive");
  if (measures.empty()) throw ConfigError("at least one measure is required");
  for (std::size_t i = 0; i < measures.size(); ++i) {
    for (std::size_t j = i + 1; j < measures.size(); ++j) {
      if (measures[i] == measures[j]) throw ConfigError("measures must not repeat");
    }
  }
  if (alpha_list.empty()) throw ConfigError("alpha_list must not be empty");
  for (double a : alpha_list) {
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha_list entries must lie in [0, 1]");
  }
  for (std::size_t i = 0; i < alpha_list.size(); ++i) {
    for (std::size_t j = i + 1; j < alpha_list.size(); ++j) {
      if (alpha_list[i] == alpha_list[j]) throw ConfigError("alpha_list entries must not repeat");
    }
  }
  if (workers < 0) throw ConfigError("workers must be non-negative");
  if (!(hist_bin_width > 0.0 && hist_bin_width <= 1.0)) throw ConfigError("hist_bin_width must lie in (0, 1]");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  optimizer.validate();
  try {
    grid().validate(kind);
  } catch (const RangeError& e) {
    throw ConfigError(e.what());
  }
}

std::string RunConfig::to_config_text() const {
  std::ostringstream out;
  out << "channel = \"" << to_string(kind) << "\"\n";
  out << "sides = \"" << to_string(sides) << "\"\n";
  out << "rank = " << rank << "\n";
  out << "ensemble_count = " << ensemble_count << "\n";
  out << "master_seed = " << master_seed << "\n";
  out << "grid_steps = " << grid_steps << "\n";
  out << "zero_threshold = " << format_real(zero_threshold) << "\n";
  out << "measures = [";
  for (std::size_t i = 0; i < measures.size(); ++i) {
    out << (i ? ", " : "") << "\"" << to_string(measures[i]) << "\"";
  }
  out << "]\n";
  out << "alpha_list = [";
  for (std::size_t i = 0; i < alpha_list.size(); ++i) out << (i ? ", " : "") << format_real(alpha_list[i]);
  out << "]\n";
  out << "theta_steps = " << optimizer.theta_steps << "\n";
  out << "phi_steps = " << optimizer.phi_steps << "\n";
  out << "refine_starts = " << optimizer.refine_starts << "\n";
  out << "refine_tolerance = " << format_real(optimizer.tolerance) << "\n";
  out << "max_iterations = " << optimizer.max_iterations << "\n";
  out << "output_dir = \"" << output_dir << "\"\n";
  out << "workers = " << workers << "\n";
  out << "resume = " << (resume ? "true" : "false") << "\n";
  out << "hist_bin_width = " << format_real(hist_bin_width) << "\n";
  return out.str();
}

bool same_science(const RunConfig& a, const RunConfig& b) {
  return a.kind == b.kind && a.sides == b.sides && a.rank == b.rank && a.master_seed == b.master_seed &&
         a.grid_steps == b.grid_steps && a.zero_threshold == b.zero_threshold && a.measures == b.measures &&
         a.alpha_list == b.alpha_list && a.optimizer.theta_steps == b.optimizer.theta_steps &&
         a.optimizer.phi_steps == b.optimizer.phi_steps &&
         a.optimizer.refine_starts == b.optimizer.refine_starts &&
         a.optimizer.tolerance == b.optimizer.tolerance &&
         a.optimizer.max_iterations == b.optimizer.max_iterations;
}

}  // namespace nmqc
