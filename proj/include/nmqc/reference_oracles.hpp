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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmqc/channels.hpp"
#include "nmqc/random_states.hpp"
#include "nmqc/sweep.hpp"

namespace nmqc {

/// Bell-diagonal state with c_xx = 1, c_yy = -c_zz under Markovian dephasing.
struct BDDephasingCase {
  double czz = 0.0;  // [-1, 1]
  Sides sides = Sides::Single;
  double p = 0.0;    // [0, 0.5]

  TwoQubitState initial_state() const { return bell_diagonal(1.0, -czz, czz); }
};

/// Closed-form spectrum of the partially transposed output, in the order
/// lambda_1..lambda_4 of the analytic treatment (not sorted).
std::array<double, 4> bd_pt_eigenvalues(const BDDephasingCase& c);

/// Noise level at which the output first becomes separable, or nothing for
/// c_zz = 0 (separable from the start). For the double-sided channel the root
/// lying in [0, 1/2] is returned.
std::optional<double> bd_collapse_point(const BDDephasingCase& c);

/// Result of the Bell-diagonal cross-check over a (c_zz, p) grid.
struct PropositionReport {
  int czz_points = 0;
  int p_points = 0;
  double max_eigenvalue_error = 0.0;
  double max_collapse_error = 0.0;  // |numerical p_c - closed form|
  double grid_step = 0.0;
  int collapse_mismatches = 0;
  int revivals = 0;
  std::vector<std::string> violations;

  bool passed(double eigen_tolerance = 1e-10) const {
    return max_eigenvalue_error <= eigen_tolerance && collapse_mismatches == 0 && revivals == 0;
  }
};

/// Compares closed-form and numerical partial-transpose spectra on every grid
/// point, checks that the log-negativity first vanishes within one grid step
/// of bd_collapse_point, and that it never revives.
PropositionReport verify_proposition(Sides sides, int czz_points = 41, int p_points = 101,
                                     double zero_threshold = 1e-5);

/// Counts log-negativity or discord revivals of random states of one rank
/// under a Markovian (alpha = 0) channel.
struct RevivalSurvey {
  std::uint64_t states = 0;
  std::uint64_t collapsed = 0;
  std::uint64_t revived = 0;
};
RevivalSurvey survey_markovian_revivals(ChannelKind kind, Sides sides, int rank, std::uint64_t count,
                                        std::uint64_t seed, int grid_steps, Measure measure,
                                        double zero_threshold = 1e-5,
                                        const OptimizerSettings& optimizer = {});

// Discord by exhaustive search over measurement axes on qubit B, using explicit
// projectors and post-measurement eigenvalues. A coarse hemisphere scan at
// coarse_step is followed by a fine_step patch around the best coarse cells.
// Shares no code path with quantum_discord beyond the entropy of the full state.
struct DenseDiscord {
  double discord = 0.0;
  double conditional_entropy = 0.0;  // bits, minimized over the scanned axes
  double theta = 0.0;
  double phi = 0.0;
};
DenseDiscord dense_grid_discord(const TwoQubitState& rho, double fine_step = 1e-3,
                                double coarse_step = 1e-2);

}  // namespace nmqc
