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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "nmqc/measures.hpp"
#include "nmqc/random_states.hpp"
#include "nmqc/reference_oracles.hpp"

namespace nmqc {
namespace {

using testing::Gen;

// Dense (theta, phi) scan at 1e-3 rad with explicit projectors, computed once by an
// independent numpy script and frozen here.
constexpr double kGoldenDiscordBd = 0.2500000061639349;

TwoQubitState classical_mixture() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = 0.5;
  return TwoQubitState::trusted(m);
}

TEST(Negativity, ReferenceStates) {
  EXPECT_NEAR(negativity(phi_plus()), 0.5, 1e-12);
  EXPECT_NEAR(negativity(ket00()), 0.0, 1e-15);
  EXPECT_NEAR(negativity(werner(0.5)), 0.125, 1e-12);
}

TEST(LogNegativity, ReferenceStates) {
  EXPECT_NEAR(log_negativity(phi_plus()), 1.0, 1e-12);
  EXPECT_NEAR(log_negativity(werner(0.5)), 0.32192809488736235, 1e-12);
  Gen gen(1);
  for (int trial = 0; trial < 100; ++trial) {
    EXPECT_NEAR(log_negativity(product_state(gen.qubit(), gen.qubit())), 0.0, 1e-12);
  }
}

TEST(LogNegativity, MatchesIndependentTraceNorm) {
  Gen gen(2);
  for (int trial = 0; trial < 500; ++trial) {
    const TwoQubitState rho = gen.density();
    EXPECT_NEAR(log_negativity(rho), testing::reference_log_negativity(rho), 1e-10);
    EXPECT_NEAR(log_negativity(rho), std::log2(2.0 * negativity(rho) + 1.0), 1e-12);
  }
}

TEST(LogNegativity, NondecreasingAlongTheWernerFamily) {
  double previous = log_negativity(werner(1.0 / 3.0));
  for (int i = 1; i <= 200; ++i) {
    const double w = 1.0 / 3.0 + (2.0 / 3.0) * i / 200.0;
    const double value = log_negativity(werner(w));
    EXPECT_GE(value, previous - 1e-14) << "w = " << w;
    previous = value;
  }
}

TEST(MutualInformation, ReferenceStates) {
  EXPECT_NEAR(mutual_information(phi_plus()), 2.0, 1e-12);
  EXPECT_NEAR(mutual_information(classical_mixture()), 1.0, 1e-12);
  Gen gen(3);
  for (int trial = 0; trial < 100; ++trial) {
    EXPECT_NEAR(mutual_information(product_state(gen.qubit(), gen.qubit())), 0.0, 1e-10);
  }
}

TEST(MeasurementBasis, ProjectorsAreCompleteAndIdempotent) {
  Gen gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const MeasurementBasis basis{gen.uniform(0.0, std::numbers::pi), gen.uniform(0.0, 2.0 * std::numbers::pi)};
    const Matrix2c p0 = basis.projector(0);
    const Matrix2c p1 = basis.projector(1);
    EXPECT_LT((p0 + p1 - Matrix2c::Identity()).norm(), 1e-14);
    EXPECT_LT((p0 * p0 - p0).norm(), 1e-14);
    EXPECT_LT((p1 * p1 - p1).norm(), 1e-14);
    EXPECT_NEAR(basis.axis().norm(), 1.0, 1e-14);
    const Eigen::Vector3d back = MeasurementBasis::from_axis(basis.axis()).axis();
    EXPECT_LT((back - basis.axis()).norm(), 1e-12);
  }
}

TEST(ConditionalEntropy, ReferenceStates) {
  Gen gen(5);
  const TwoQubitState mixed = TwoQubitState::trusted(0.25 * Matrix4c::Identity());
  for (int trial = 0; trial < 50; ++trial) {
    const MeasurementBasis basis = MeasurementBasis::from_axis(gen.unit_vector());
    EXPECT_NEAR(conditional_entropy_measured(phi_plus(), basis), 0.0, 1e-10);
    EXPECT_NEAR(conditional_entropy_measured(mixed, basis), 1.0, 1e-12);
  }
  EXPECT_NEAR(conditional_entropy_measured(classical_mixture(), MeasurementBasis{0.0, 0.0}), 0.0, 1e-12);
}

TEST(ConditionalEntropy, BlochFormMatchesExplicitProjectors) {
  Gen gen(6);
  for (int trial = 0; trial < 500; ++trial) {
    const TwoQubitState rho = gen.density();
    const Eigen::Vector3d axis = gen.unit_vector();
    const double expected = testing::reference_conditional_entropy(rho, axis);
    EXPECT_NEAR(conditional_entropy_measured(rho, MeasurementBasis::from_axis(axis)), expected, 1e-10);
    EXPECT_NEAR(conditional_entropy_measured(bloch_decomposition(rho), axis), expected, 1e-10);
  }
}

TEST(Discord, ReferenceStates) {
  EXPECT_NEAR(quantum_discord(phi_plus()).discord, 1.0, 1e-8);
  Gen gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    EXPECT_NEAR(quantum_discord(product_state(gen.qubit(), gen.qubit())).discord, 0.0, 1e-8);
  }
}

TEST(Discord, BellDiagonalMatchesFrozenDenseOracle) {
  const DiscordResult r = quantum_discord(bell_diagonal(0.5, 0.25, 0.25));
  EXPECT_NEAR(r.discord, kGoldenDiscordBd, 1e-4);
  EXPECT_NEAR(r.discord, 0.25, 1e-8);
  EXPECT_NEAR(std::abs(r.optimal_basis.axis().x()), 1.0, 1e-3);
}

TEST(Discord, DecomposesIntoTotalMinusClassicalCorrelation) {
  Gen gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const TwoQubitState rho = gen.density();
    const DiscordResult r = quantum_discord(rho);
    EXPECT_NEAR(r.mutual_information, mutual_information(rho), 1e-10);
    EXPECT_NEAR(r.discord, r.mutual_information - r.classical_correlation, 1e-12);
    const double measured = conditional_entropy_measured(rho, r.optimal_basis);
    const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    EXPECT_NEAR(r.discord, s_b - von_neumann_entropy(rho) + measured, 1e-9);
  }
}

TEST(Discord, OptimizerMatchesDenseOracleOnBellDiagonalStates) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const TwoQubitState rho = random_bell_diagonal(2026, i);
    EXPECT_NEAR(quantum_discord(rho).discord, dense_grid_discord(rho).discord, 1e-4) << "state " << i;
  }
}

TEST(Discord, OptimizerMatchesDenseOracleOnGeneralStates) {
  Gen gen(9);
  for (int trial = 0; trial < 15; ++trial) {
    const TwoQubitState rho = gen.density();
    EXPECT_NEAR(quantum_discord(rho).discord, dense_grid_discord(rho).discord, 1e-4) << "trial " << trial;
  }
}

TEST(Measures, BoundedOnRandomStates) {
  Gen gen(10);
  for (int trial = 0; trial < 300; ++trial) {
    const TwoQubitState rho = gen.density();
    const double ln = log_negativity(rho);
    const double d = quantum_discord(rho).discord;
    EXPECT_GE(ln, -1e-8);
    EXPECT_LE(ln, 1.0 + 1e-8);
    EXPECT_GE(d, -1e-8);
    EXPECT_LE(d, 1.0 + 1e-8);
  }
}

TEST(Measures, EntangledStatesAreDiscordant) {
  Gen gen(11);
  int entangled = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const TwoQubitState rho = gen.density();
    if (negativity(rho) <= 1e-6) continue;
    ++entangled;
    EXPECT_GT(quantum_discord(rho).discord, 1e-6);
  }
  EXPECT_GT(entangled, 100);
}

TEST(Measures, InvariantUnderLocalUnitaries) {
  Gen gen(12);
  const double optimizer_tolerance = OptimizerSettings{}.tolerance;
  for (int trial = 0; trial < 100; ++trial) {
    const TwoQubitState rho = gen.density();
    const TwoQubitState rotated = testing::local_rotate(rho, gen.unitary2(), gen.unitary2());
    EXPECT_NEAR(log_negativity(rotated), log_negativity(rho), 1e-10);
    EXPECT_NEAR(quantum_discord(rotated).discord, quantum_discord(rho).discord, 2.0 * optimizer_tolerance);
  }
}

TEST(Measures, NamesAndSettingsValidation) {
  EXPECT_EQ(parse_measure(to_string(Measure::LogNegativity)), Measure::LogNegativity);
  EXPECT_EQ(parse_measure(to_string(Measure::Discord)), Measure::Discord);
  EXPECT_THROW(parse_measure("EoF"), ConfigError);
  OptimizerSettings bad;
  bad.theta_steps = 0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = OptimizerSettings{};
  bad.tolerance = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  EXPECT_NO_THROW(OptimizerSettings{}.validate());
}

}  // namespace
}  // namespace nmqc
