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

#include "nmqc/random_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace nmqc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

void RandomStateSpec::validate() const {
  if (rank < 1 || rank > 4) throw ConfigError("rank must be in 1..4, got " + std::to_string(rank));
  if (count == 0) throw ConfigError("ensemble count must be positive");
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

double GaussianSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::VectorXcd gaussian_amplitudes(GaussianSource& source, int dimension) {
  Eigen::VectorXcd v(dimension);
  for (int i = 0; i < dimension; ++i) {
    const double re = source.next();
    const double im = source.next();
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

TwoQubitState sample_state(const RandomStateSpec& spec, std::uint64_t index) {
  spec.validate();
  if (index >= spec.count) throw PreconditionError("sample index beyond ensemble size");
  GaussianSource source(stream_seed(spec.master_seed, index));
  const int env = spec.rank;
  const Eigen::VectorXcd psi = gaussian_amplitudes(source, 4 * env);
  // Amplitude of |a b e> sits at (2a + b) * env + e; view as a 4 x env matrix.
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> m(4, env);
  for (int row = 0; row < 4; ++row) {
    for (int e = 0; e < env; ++e) m(row, e) = psi(row * env + e);
  }
  Matrix4c rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return TwoQubitState::trusted(rho);
}

std::array<double, 4> bell_diagonal_spectrum(double cxx, double cyy, double czz) {
  std::array<double, 4> ev = {
      0.25 * (1.0 - cxx - cyy - czz),
      0.25 * (1.0 - cxx + cyy + czz),
      0.25 * (1.0 + cxx - cyy + czz),
      0.25 * (1.0 + cxx + cyy - czz),
  };
  std::sort(ev.begin(), ev.end());
  return ev;
}

TwoQubitState bell_diagonal(double cxx, double cyy, double czz, bool validate) {
  if (validate) {
    const auto ev = bell_diagonal_spectrum(cxx, cyy, czz);
    if (ev.front() < -tol::kPsdSlack) {
      throw ConfigError("Bell-diagonal correlators outside the state tetrahedron");
    }
  }
  Matrix4c rho = Matrix4c::Identity();
  rho += cxx * kron(pauli::x(), pauli::x());
  rho += cyy * kron(pauli::y(), pauli::y());
  rho += czz * kron(pauli::z(), pauli::z());
  return TwoQubitState::trusted(0.25 * rho);
}

TwoQubitState phi_plus() {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
  return TwoQubitState::trusted(rho);
}

TwoQubitState ket00() {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = 1.0;
  return TwoQubitState::trusted(rho);
}

TwoQubitState random_bell_diagonal(std::uint64_t master_seed, std::uint64_t index) {
  GaussianSource source(stream_seed(master_seed, index));
  std::array<double, 4> w{};  // Phi+, Phi-, Psi+, Psi-
  double total = 0.0;
  for (double& x : w) {
    const double g = source.next();
    x = g * g;
    total += x;
  }
  for (double& x : w) x /= total;
  const double cxx = w[0] - w[1] + w[2] - w[3];
  const double cyy = -w[0] + w[1] + w[2] - w[3];
  const double czz = w[0] + w[1] - w[2] - w[3];
  return bell_diagonal(cxx, cyy, czz, false);
}

TwoQubitState werner(double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("Werner weight must lie in [0, 1]");
  const Matrix4c rho = w * phi_plus().matrix() + (1.0 - w) * 0.25 * Matrix4c::Identity();
  return TwoQubitState::trusted(rho);
}

TwoQubitState product_state(const QubitState& a, const QubitState& b) {
  return TwoQubitState::trusted(kron(a.matrix(), b.matrix()));
}

}  // namespace nmqc
