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
#include <optional>
#include <vector>

#include "nmqc/channels.hpp"
#include "nmqc/measures.hpp"

namespace nmqc {

/// Uniform noise grid p_j = p_min + j (p_max - p_min) / steps, j = 0..steps.
/// Both endpoints are included.
struct SweepGrid {
  double p_min = 0.0;
  double p_max = 0.5;
  int steps = 500;

  static SweepGrid for_channel(ChannelKind kind, int steps);
  int size() const { return steps + 1; }
  double step() const { return (p_max - p_min) / steps; }
  double at(int j) const;
  std::vector<double> values() const;
  /// Throws RangeError if the grid leaves the channel's admissible range.
  void validate(ChannelKind kind) const;
};

struct Trajectory {
  Measure measure = Measure::LogNegativity;
  std::vector<double> p_values;
  std::vector<double> qc_values;
};

/// Collapse/revival structure of one trajectory.
struct EventRecord {
  std::uint64_t index = 0;  // state index within the ensemble
  double initial_qc = 0.0;
  bool collapsed = false;
  std::optional<double> p_c;
  bool regenerated = false;
  std::optional<double> p_reg;
  int regeneration_count = 0;
};

/// qc_values[j] = measure(channel(rho0, p_j)); every point starts from rho0.
Trajectory sweep(const TwoQubitState& rho0, const ChannelConfig& cfg, const SweepGrid& grid,
                 Measure measure, const OptimizerSettings& optimizer = {});

/// Scans a trajectory for the first drop below `zero_threshold` that follows a
/// value at or above it (collapse), and counts every later return to the
/// threshold (regeneration). p_c and p_reg are grid values, not interpolated.
EventRecord detect_events(const Trajectory& trajectory, double zero_threshold = 1e-5);

}  // namespace nmqc
