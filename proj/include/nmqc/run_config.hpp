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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmqc/channels.hpp"
#include "nmqc/measures.hpp"
#include "nmqc/sweep.hpp"

namespace nmqc {

/// One ensemble run: a fixed (channel kind, sides, rank) column evaluated for
/// every alpha in alpha_list and every requested measure.
struct RunConfig {
  ChannelKind kind = ChannelKind::Dephasing;
  Sides sides = Sides::Single;
  int rank = 2;
  std::uint64_t ensemble_count = 5000;
  std::uint64_t master_seed = 42;
  int grid_steps = 500;
  double zero_threshold = 1e-5;
  std::vector<Measure> measures = {Measure::LogNegativity, Measure::Discord};
  OptimizerSettings optimizer;
  std::vector<double> alpha_list = {0.0, 0.2, 0.3, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::string output_dir = "nmqc_out";
  int workers = 0;  // 0: one per hardware thread
  bool resume = false;
  double hist_bin_width = 0.1;

  SweepGrid grid() const { return SweepGrid::for_channel(kind, grid_steps); }
  ChannelConfig channel(double alpha) const { return ChannelConfig{kind, alpha, sides}; }
  int resolved_workers() const;

  /// Throws ConfigError before any compute is attempted.
  void validate() const;

  /// Resolved configuration as a flat `key = value` document that the CLI
  /// accepts back through --config.
  std::string to_config_text() const;
};

/// True when two configs produce identical records for the same state index.
/// Execution-only fields (output_dir, workers, resume, hist_bin_width) and
/// ensemble_count are ignored.
bool same_science(const RunConfig& a, const RunConfig& b);

}  // namespace nmqc
