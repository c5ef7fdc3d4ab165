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

#include "nmqc/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace nmqc {

namespace {

constexpr double kBranchCutoff = 1e-12;
constexpr double kSimplexDiameter = 1e-4;  // radians
constexpr double kInvLn2 = 1.4426950408889634;

inline double binary_entropy_nats(double up) {
  const double down = 1.0 - up;
  double s = 0.0;
  if (up > 0.0) s -= up * std::log(up);
  if (down > 0.0) s -= down * std::log(down);
  return s;
}

// p * S(state with Bloch vector u / (2 p)), in nats.
inline double branch_term(double p, const Eigen::Vector3d& u) {
  if (p < kBranchCutoff) return 0.0;
  const double r = std::min(1.0, u.norm() / (2.0 * p));
  return p * binary_entropy_nats(0.5 * (1.0 + r));
}

inline double conditional_entropy_nats(const BlochDecomposition& bloch, const Eigen::Vector3d& n) {
  const double bn = bloch.b.dot(n);
  const Eigen::Vector3d tn = bloch.t * n;
  return branch_term(0.5 * (1.0 + bn), bloch.a + tn) + branch_term(0.5 * (1.0 - bn), bloch.a - tn);
}

inline Eigen::Vector3d axis_of(double theta, double phi) {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

// Cell-center axes of the upper hemisphere of a theta x phi grid. The lower
// half mirrors it (n and -n define the same measurement), so it is skipped.
struct GridTable {
  int theta_steps = 0;
  int phi_steps = 0;
  Eigen::Matrix3Xd axes;
  std::vector<std::array<double, 2>> angles;
};

const GridTable& grid_table(int theta_steps, int phi_steps) {
  thread_local GridTable table;
  if (table.theta_steps == theta_steps && table.phi_steps == phi_steps) return table;
  table = GridTable{theta_steps, phi_steps, {}, {}};
  const int rings = (theta_steps + 1) / 2;
  const double dtheta = std::numbers::pi / theta_steps;
  const double dphi = 2.0 * std::numbers::pi / phi_steps;
  table.axes.resize(3, static_cast<Eigen::Index>(rings) * phi_steps);
  Eigen::Index col = 0;
  for (int i = 0; i < rings; ++i) {
    const double theta = (i + 0.5) * dtheta;
    for (int j = 0; j < phi_steps; ++j) {
      const double phi = (j + 0.5) * dphi;
      table.axes.col(col++) = axis_of(theta, phi);
      table.angles.push_back({theta, phi});
    }
  }
  return table;
}

// Vectorized branch_term over a row of (p, |u|) pairs.
Eigen::ArrayXd branch_terms(const Eigen::ArrayXd& p, const Eigen::ArrayXd& u_norm) {
  constexpr double kTiny = 1e-300;
  const Eigen::ArrayXd r = (u_norm / (2.0 * p).max(kTiny)).min(1.0);
  const Eigen::ArrayXd up = 0.5 * (1.0 + r);
  const Eigen::ArrayXd down = 0.5 * (1.0 - r);
  const Eigen::ArrayXd h = -(up * up.max(kTiny).log() + down * down.max(kTiny).log());
  return (p < kBranchCutoff).select(Eigen::ArrayXd::Zero(p.size()), p * h);
}

// Conditional entropy (nats) at every grid axis.
Eigen::ArrayXd grid_values(const BlochDecomposition& bloch, const GridTable& grid) {
  const Eigen::ArrayXd bn = (bloch.b.transpose() * grid.axes).transpose().array();
  const Eigen::Matrix3Xd tn = bloch.t * grid.axes;
  const Eigen::ArrayXd plus_norm = (tn.colwise() + bloch.a).colwise().norm().transpose().array();
  const Eigen::ArrayXd minus_norm = (tn.colwise() - bloch.a).colwise().norm().transpose().array();
  return branch_terms(0.5 * (1.0 + bn), plus_norm) + branch_terms(0.5 * (1.0 - bn), minus_norm);
}

struct Vertex {
  double theta;
  double phi;
  double value;
};

Vertex nelder_mead(const BlochDecomposition& bloch, double theta, double phi, double step_theta,
                   double step_phi, const OptimizerSettings& settings) {
  auto f = [&](double th, double ph) { return conditional_entropy_nats(bloch, axis_of(th, ph)); };
  std::array<Vertex, 3> s = {Vertex{theta, phi, f(theta, phi)},
                             Vertex{theta + step_theta, phi, f(theta + step_theta, phi)},
                             Vertex{theta, phi + step_phi, f(theta, phi + step_phi)}};
  const double tol_nats = settings.tolerance / kInvLn2;
  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    std::sort(s.begin(), s.end(), [](const Vertex& l, const Vertex& r) { return l.value < r.value; });
    const double spread = s[2].value - s[0].value;
    double diameter = 0.0;
    for (int k = 1; k < 3; ++k) {
      diameter = std::max(diameter, std::hypot(s[k].theta - s[0].theta, s[k].phi - s[0].phi));
    }
    if (spread <= tol_nats && diameter <= kSimplexDiameter) break;

    const double ct = 0.5 * (s[0].theta + s[1].theta);
    const double cp = 0.5 * (s[0].phi + s[1].phi);
    auto point = [&](double coef) {
      const double th = ct + coef * (s[2].theta - ct);
      const double ph = cp + coef * (s[2].phi - cp);
      return Vertex{th, ph, f(th, ph)};
    };
    const Vertex reflected = point(-1.0);
    if (reflected.value < s[0].value) {
      const Vertex expanded = point(-2.0);
      s[2] = expanded.value < reflected.value ? expanded : reflected;
    } else if (reflected.value < s[1].value) {
      s[2] = reflected;
    } else {
      const bool outside = reflected.value < s[2].value;
      const Vertex contracted = point(outside ? -0.5 : 0.5);
      if (contracted.value < std::min(reflected.value, s[2].value)) {
        s[2] = contracted;
      } else {
        for (int k = 1; k < 3; ++k) {
          const double th = s[0].theta + 0.5 * (s[k].theta - s[0].theta);
          const double ph = s[0].phi + 0.5 * (s[k].phi - s[0].phi);
          s[k] = Vertex{th, ph, f(th, ph)};
        }
      }
    }
  }
  return *std::min_element(s.begin(), s.end(),
                           [](const Vertex& l, const Vertex& r) { return l.value < r.value; });
}

double entropy_bits_of(const TwoQubitState& rho) { return von_neumann_entropy(rho); }

}  // namespace

std::string_view to_string(Measure measure) {
  return measure == Measure::LogNegativity ? "LN" : "QD";
}

Measure parse_measure(std::string_view text) {
  if (text == "LN" || text == "ln") return Measure::LogNegativity;
  if (text == "QD" || text == "qd") return Measure::Discord;
  throw ConfigError("unknown measure '" + std::string(text) + "' (expected LN or QD)");
}

double negativity(const TwoQubitState& rho) {
  const auto ev = hermitian_eigenvalues(partial_transpose(rho, Subsystem::A));
  double n = 0.0;
  for (double v : ev) {
    if (v < 0.0) n -= v;
  }
  return n;
}

double log_negativity(const TwoQubitState& rho) { return std::log2(2.0 * negativity(rho) + 1.0); }

double mutual_information(const TwoQubitState& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::B)) +
         von_neumann_entropy(partial_trace(rho, Subsystem::A)) - entropy_bits_of(rho);
}

BlochDecomposition bloch_decomposition(const TwoQubitState& rho) {
  BlochDecomposition out;
  const Matrix4c& m = rho.matrix();
  for (int i = 1; i < 4; ++i) {
    out.a(i - 1) = (kron(pauli::by_index(i), pauli::identity()) * m).trace().real();
    out.b(i - 1) = (kron(pauli::identity(), pauli::by_index(i)) * m).trace().real();
    for (int j = 1; j < 4; ++j) {
      out.t(i - 1, j - 1) = (kron(pauli::by_index(i), pauli::by_index(j)) * m).trace().real();
    }
  }
  return out;
}

Eigen::Vector3d MeasurementBasis::axis() const { return axis_of(theta, phi); }

Matrix2c MeasurementBasis::projector(int outcome) const {
  const Eigen::Vector3d n = axis();
  const double sign = outcome == 0 ? 1.0 : -1.0;
  Matrix2c out = pauli::identity();
  out += sign * (n.x() * pauli::x() + n.y() * pauli::y() + n.z() * pauli::z());
  return 0.5 * out;
}

MeasurementBasis MeasurementBasis::from_axis(const Eigen::Vector3d& axis) {
  const Eigen::Vector3d n = axis.normalized();
  MeasurementBasis out;
  out.theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
  double phi = std::atan2(n.y(), n.x());
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  out.phi = phi;
  return out;
}

double conditional_entropy_measured(const BlochDecomposition& bloch, const Eigen::Vector3d& unit_axis) {
  return kInvLn2 * conditional_entropy_nats(bloch, unit_axis);
}

double conditional_entropy_measured(const TwoQubitState& rho, const MeasurementBasis& basis) {
  return conditional_entropy_measured(bloch_decomposition(rho), basis.axis());
}

void OptimizerSettings::validate() const {
  if (theta_steps < 1 || phi_steps < 1) throw ConfigError("optimizer grid sizes must be positive");
  if (refine_starts < 1) throw ConfigError("optimizer needs at least one refinement start");
  if (!(tolerance > 0.0)) throw ConfigError("optimizer tolerance must be positive");
  if (max_iterations < 0) throw ConfigError("optimizer max_iterations must be non-negative");
}

DiscordResult quantum_discord(const TwoQubitState& rho, const OptimizerSettings& settings) {
  const BlochDecomposition bloch = bloch_decomposition(rho);
  const GridTable& grid = grid_table(settings.theta_steps, settings.phi_steps);

  const Eigen::ArrayXd values = grid_values(bloch, grid);
  const std::size_t keep = std::min<std::size_t>(settings.refine_starts, grid.angles.size());
  std::vector<std::pair<double, std::size_t>> best;  // ascending by value
  best.reserve(keep + 1);
  for (std::size_t k = 0; k < grid.angles.size(); ++k) {
    const double v = values(static_cast<Eigen::Index>(k));
    if (best.size() < keep || v < best.back().first) {
      auto pos = std::upper_bound(best.begin(), best.end(), v,
                                  [](double value, const auto& e) { return value < e.first; });
      best.insert(pos, {v, k});
      if (best.size() > keep) best.pop_back();
    }
  }

  const double step_theta = 0.5 * std::numbers::pi / settings.theta_steps;
  const double step_phi = std::numbers::pi / settings.phi_steps;
  Vertex optimum{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (const auto& [value, k] : best) {
    Vertex v = nelder_mead(bloch, grid.angles[k][0], grid.angles[k][1], step_theta, step_phi, settings);
    if (value < v.value) v = Vertex{grid.angles[k][0], grid.angles[k][1], value};
    if (v.value < optimum.value) optimum = v;
  }

  const double s_a = qubit_entropy_from_bloch_radius(bloch.a.norm());
  const double s_b = qubit_entropy_from_bloch_radius(bloch.b.norm());
  const double s_ab = entropy_bits_of(rho);
  const double s_cond = kInvLn2 * optimum.value;

  DiscordResult out;
  out.mutual_information = s_a + s_b - s_ab;
  out.classical_correlation = s_a - s_cond;
  out.discord = out.mutual_information - out.classical_correlation;
  out.optimal_basis = MeasurementBasis::from_axis(axis_of(optimum.theta, optimum.phi));
  return out;
}

double evaluate_measure(const TwoQubitState& rho, Measure measure, const OptimizerSettings& settings) {
  return measure == Measure::LogNegativity ? log_negativity(rho) : quantum_discord(rho, settings).discord;
}

}  // namespace nmqc
