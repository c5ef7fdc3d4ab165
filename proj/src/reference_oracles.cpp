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

#include "nmqc/reference_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace nmqc {

std::array<double, 4> bd_pt_eigenvalues(const BDDephasingCase& c) {
  const double czz = c.czz;
  const double p = c.p;
  if (c.sides == Sides::Single) {
    return {
        0.5 * (1.0 + (-1.0 + czz) * p),
        0.5 * (czz * (-1.0 + p) + p),
        0.5 * (1.0 - (1.0 + czz) * p),
        0.5 * (czz + p - czz * p),
    };
  }
  const double q = p - p * p;  // (1 - p) p
  const double h = 0.5 - p + p * p;
  return {
      q + czz * h,
      q - czz * h,
      0.5 - (1.0 + czz) * p + (1.0 + czz) * p * p,
      0.5 - (1.0 - czz) * p + (1.0 - czz) * p * p,
  };
}

std::optional<double> bd_collapse_point(const BDDephasingCase& c) {
  const double czz = c.czz;
  if (czz == 0.0) return std::nullopt;
  if (c.sides == Sides::Single) {
    return czz < 0.0 ? czz / (-1.0 + czz) : czz / (1.0 + czz);
  }
  const double root = std::sqrt(std::max(0.0, 1.0 - czz * czz));
  std::array<double, 2> branches{};
  if (czz < 0.0) {
    branches = {(-1.0 + czz - root) / (2.0 * (-1.0 + czz)), (-1.0 + czz + root) / (2.0 * (-1.0 + czz))};
  } else {
    branches = {(1.0 + czz - root) / (2.0 * (1.0 + czz)), (1.0 + czz + root) / (2.0 * (1.0 + czz))};
  }
  // Only one branch lies inside the dephasing range (both meet at 1/2 when |c_zz| = 1).
  constexpr double kSlack = 1e-12;
  for (double b : branches) {
    if (b >= -kSlack && b <= 0.5 + kSlack) return std::clamp(b, 0.0, 0.5);
  }
  return std::nullopt;
}

PropositionReport verify_proposition(Sides sides, int czz_points, int p_points, double zero_threshold) {
  PropositionReport report;
  report.czz_points = czz_points;
  report.p_points = p_points;
  const SweepGrid grid{0.0, 0.5, p_points - 1};
  report.grid_step = grid.step();
  const ChannelConfig cfg{ChannelKind::Dephasing, 0.0, sides};

  for (int i = 0; i < czz_points; ++i) {
    const double czz = czz_points == 1 ? 0.0 : -1.0 + 2.0 * i / (czz_points - 1);
    BDDephasingCase c{czz, sides, 0.0};
    const TwoQubitState rho0 = c.initial_state();

    Trajectory traj;
    traj.measure = Measure::LogNegativity;
    for (int j = 0; j < grid.size(); ++j) {
      c.p = grid.at(j);
      const TwoQubitState out = apply_channel(rho0, cfg, c.p);
      const auto numeric = hermitian_eigenvalues(partial_transpose(out, Subsystem::A));
      auto closed = bd_pt_eigenvalues(c);
      std::sort(closed.begin(), closed.end());
      for (int k = 0; k < 4; ++k) {
        report.max_eigenvalue_error = std::max(report.max_eigenvalue_error, std::abs(numeric[k] - closed[k]));
      }
      traj.p_values.push_back(c.p);
      traj.qc_values.push_back(log_negativity(out));
    }

    const EventRecord rec = detect_events(traj, zero_threshold);
    const auto expected = bd_collapse_point(c);
    std::ostringstream where;
    where << "c_zz=" << czz << " (" << to_string(sides) << ")";
    if (expected.has_value() != rec.collapsed) {
      ++report.collapse_mismatches;
      report.violations.push_back(where.str() + ": collapse expected " + (expected ? "yes" : "no") +
                                  ", observed " + (rec.collapsed ? "yes" : "no"));
    } else if (expected) {
      const double err = std::abs(*rec.p_c - *expected);
      report.max_collapse_error = std::max(report.max_collapse_error, err);
      if (err > report.grid_step + 1e-12) {
        ++report.collapse_mismatches;
        std::ostringstream msg;
        msg << where.str() << ": first zero at p=" << *rec.p_c << ", closed form " << *expected;
        report.violations.push_back(msg.str());
      }
    }
    if (rec.regenerated) {
      ++report.revivals;
      report.violations.push_back(where.str() + ": entanglement revived");
    }
  }
  return report;
}

namespace {

// Sum over outcomes of p_k S(rho_A|k), bits, for the measurement along axis(theta, phi).
double projective_conditional_entropy(const Matrix4c& rho, double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  const Matrix2c n_sigma = nx * pauli::x() + ny * pauli::y() + nz * pauli::z();
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const Matrix2c proj = 0.5 * (pauli::identity() + sign * n_sigma);
    const Matrix4c lifted = kron(pauli::identity(), proj);
    const Matrix4c branch = lifted * rho * lifted;
    const Matrix2c reduced = partial_trace(TwoQubitState::trusted(branch), Subsystem::B).matrix();
    const double prob = reduced.trace().real();
    if (prob < 1e-14) continue;
    const auto ev = hermitian_eigenvalues(Matrix2c(0.5 * (reduced + reduced.adjoint()) / prob));
    total += prob * spectrum_entropy(ev.data(), ev.data() + ev.size());
  }
  return total;
}

struct AxisValue {
  double value;
  double theta;
  double phi;
};

}  // namespace

DenseDiscord dense_grid_discord(const TwoQubitState& rho, double fine_step, double coarse_step) {
  if (!(fine_step > 0.0 && coarse_step >= fine_step)) {
    throw PreconditionError("dense grid needs 0 < fine_step <= coarse_step");
  }
  const Matrix4c& m = rho.matrix();
  constexpr double kPi = std::numbers::pi;
  constexpr std::size_t kSeeds = 4;

  std::vector<AxisValue> coarse;
  const int n_theta = static_cast<int>(std::ceil(0.5 * kPi / coarse_step));
  const int n_phi = static_cast<int>(std::ceil(2.0 * kPi / coarse_step));
  for (int i = 0; i <= n_theta; ++i) {
    const double theta = std::min(0.5 * kPi, i * coarse_step);
    for (int j = 0; j < (i == 0 ? 1 : n_phi); ++j) {
      const double phi = j * coarse_step;
      coarse.push_back({projective_conditional_entropy(m, theta, phi), theta, phi});
    }
  }
  std::partial_sort(coarse.begin(), coarse.begin() + kSeeds, coarse.end(),
                    [](const AxisValue& l, const AxisValue& r) { return l.value < r.value; });

  AxisValue best = coarse.front();
  const int half = static_cast<int>(std::ceil(1.5 * coarse_step / fine_step));
  for (std::size_t s = 0; s < kSeeds; ++s) {
    const AxisValue seed = coarse[s];
    for (int i = -half; i <= half; ++i) {
      const double theta = seed.theta + i * fine_step;
      if (theta < 0.0 || theta > kPi) continue;
      for (int j = -half; j <= half; ++j) {
        const double phi = seed.phi + j * fine_step;
        const double v = projective_conditional_entropy(m, theta, phi);
        if (v < best.value) best = {v, theta, phi};
      }
    }
  }

  const TwoQubitState rho_b = TwoQubitState::trusted(m);
  const double s_b = von_neumann_entropy(partial_trace(rho_b, Subsystem::A));
  DenseDiscord out;
  out.conditional_entropy = best.value;
  out.theta = best.theta;
  out.phi = best.phi;
  // D = S(B) - S(AB) + min_n sum_k p_k S(rho_A|k)
  out.discord = s_b - von_neumann_entropy(rho_b) + best.value;
  return out;
}

RevivalSurvey survey_markovian_revivals(ChannelKind kind, Sides sides, int rank, std::uint64_t count,
                                        std::uint64_t seed, int grid_steps, Measure measure,
                                        double zero_threshold, const OptimizerSettings& optimizer) {
  const RandomStateSpec spec{rank, count, seed};
  const ChannelConfig cfg{kind, 0.0, sides};
  const SweepGrid grid = SweepGrid::for_channel(kind, grid_steps);
  RevivalSurvey out;
  for (std::uint64_t i = 0; i < count; ++i) {
    const EventRecord rec =
        detect_events(sweep(sample_state(spec, i), cfg, grid, measure, optimizer), zero_threshold);
    ++out.states;
    out.collapsed += rec.collapsed ? 1 : 0;
    out.revived += rec.regenerated ? 1 : 0;
  }
  return out;
}

}  // namespace nmqc
