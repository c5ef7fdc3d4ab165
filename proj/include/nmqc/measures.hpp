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

#include <string_view>

#include "nmqc/linalg.hpp"

namespace nmqc {

enum class Measure { LogNegativity, Discord };

std::string_view to_string(Measure measure);  // "LN" / "QD"
Measure parse_measure(std::string_view text);

/// Sum of |negative eigenvalues| of the partial transpose on A.
double negativity(const TwoQubitState& rho);
/// log2(2 N + 1), in ebits.
double log_negativity(const TwoQubitState& rho);
/// S(A) + S(B) - S(AB), in bits.
double mutual_information(const TwoQubitState& rho);

/// Pauli expansion rho = (I + a.sigma (x) I + I (x) b.sigma + sum_ij t_ij sigma_i (x) sigma_j) / 4.
struct BlochDecomposition {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
};
BlochDecomposition bloch_decomposition(const TwoQubitState& rho);

/// Rank-1 projective measurement on qubit B along the Bloch axis (theta, phi).
/// Outcome 0 projects onto +axis, outcome 1 onto -axis.
struct MeasurementBasis {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  Eigen::Vector3d axis() const;
  Matrix2c projector(int outcome) const;
  /// Canonical angles of a (not necessarily unit) axis.
  static MeasurementBasis from_axis(const Eigen::Vector3d& axis);
};

/// sum_k p_k S(rho_{A|k}) for a measurement on B. Branches with p_k < 1e-12
/// contribute nothing.
double conditional_entropy_measured(const TwoQubitState& rho, const MeasurementBasis& basis);
double conditional_entropy_measured(const BlochDecomposition& bloch, const Eigen::Vector3d& unit_axis);

/// Controls the discord minimization: a coarse (theta, phi) grid over the
/// sphere followed by Nelder-Mead refinement from the best cells.
struct OptimizerSettings {
  int theta_steps = 30;
  int phi_steps = 60;
  int refine_starts = 3;
  double tolerance = 1e-6;   // spread of the simplex values
  int max_iterations = 500;  // per refinement

  void validate() const;
};

struct DiscordResult {
  double discord = 0.0;
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  MeasurementBasis optimal_basis;
};

/// Discord with measurement on B: I(rho) - max_basis [S(A) - S_cond(basis)].
DiscordResult quantum_discord(const TwoQubitState& rho, const OptimizerSettings& settings = {});

/// Scalar entry point used by sweeps.
double evaluate_measure(const TwoQubitState& rho, Measure measure, const OptimizerSettings& settings);

}  // namespace nmqc
