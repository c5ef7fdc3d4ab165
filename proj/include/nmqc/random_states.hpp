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
#include <random>

#include "nmqc/linalg.hpp"

namespace nmqc {

/// A family of Haar-random two-qubit states of fixed rank.
struct RandomStateSpec {
  int rank = 1;                 // 1..4
  std::uint64_t count = 0;      // ensemble size
  std::uint64_t master_seed = 0;

  void validate() const;
};

/// Seed of the private random stream used for state `index`. Depends only on
/// (master_seed, index), so samples can be generated in any order.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Standard normal deviates by the Box-Muller transform over a
/// std::mt19937_64 stream. Both engine and transform are fully specified, so
/// sequences are identical across standard libraries.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();  // [0, 1)
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Normalized vector of complex amplitudes a + ib with a, b ~ N(0, 1).
Eigen::VectorXcd gaussian_amplitudes(GaussianSource& source, int dimension);

/// Draws state `index` of the family: a Gaussian pure state on
/// 2 (x) 2 (x) env with env dimension = rank, traced over the environment.
TwoQubitState sample_state(const RandomStateSpec& spec, std::uint64_t index);

/// rho = (I + sum_i c_ii sigma_i (x) sigma_i) / 4. Throws ConfigError when the
/// correlators fall outside the positive tetrahedron and `validate` is set.
TwoQubitState bell_diagonal(double cxx, double cyy, double czz, bool validate = true);

/// Spectrum of bell_diagonal(cxx, cyy, czz), ascending.
std::array<double, 4> bell_diagonal_spectrum(double cxx, double cyy, double czz);

/// w |Phi+><Phi+| + (1 - w) I/4.
/// Bell-diagonal state whose Bell-basis weights are normalized squares of four
/// standard normals drawn from stream (master_seed, index).
TwoQubitState random_bell_diagonal(std::uint64_t master_seed, std::uint64_t index);

TwoQubitState werner(double w);

/// |Phi+><Phi+| with |Phi+> = (|00> + |11>) / sqrt(2).
TwoQubitState phi_plus();

/// Product state |0><0| (x) |0><0|.
TwoQubitState ket00();

/// rho_a (x) rho_b as a two-qubit state.
TwoQubitState product_state(const QubitState& a, const QubitState& b);

}  // namespace nmqc
