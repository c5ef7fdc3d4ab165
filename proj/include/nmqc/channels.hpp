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

enum class ChannelKind { Dephasing, Depolarizing };
enum class Sides { Single, Double };

std::string_view to_string(ChannelKind kind);
std::string_view to_string(Sides sides);
ChannelKind parse_channel_kind(std::string_view text);
Sides parse_sides(std::string_view text);

/// Largest admissible noise parameter: 0.5 for dephasing, 1 for depolarizing.
double max_noise(ChannelKind kind);

struct ChannelConfig {
  ChannelKind kind = ChannelKind::Dephasing;
  double alpha = 0.0;  // non-Markovianity strength in [0, 1]
  Sides sides = Sides::Single;

  void validate() const;
};

/// Conjugation weights of a single-qubit Pauli channel,
/// rho -> sum_i w_i sigma_i rho sigma_i.
///
/// The weights are the squared Kraus prefactors of the non-Markovian dephasing
/// and depolarizing families:
///   dephasing     w_I = (1 - a p)(1 - p),   w_z = (1 + a(1 - p)) p
///   depolarizing  w_I = (1 - 3a p)(1 - p),  w_x = w_y = w_z = (1 + 3a(1 - p)) p / 3
/// For depolarizing noise with 3 a p > 1 the identity weight is negative and
/// the map is trace- and Hermiticity-preserving but not completely positive.
struct PauliChannelWeights {
  double identity = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const;
  double sum() const { return identity + x + y + z; }
};

/// Throws RangeError for p outside [0, max_noise(kind)] or alpha outside [0, 1].
PauliChannelWeights channel_weights(ChannelKind kind, double alpha, double p);
inline PauliChannelWeights channel_weights(const ChannelConfig& cfg, double p) {
  return channel_weights(cfg.kind, cfg.alpha, p);
}

/// sum_i w_i (sigma_i (x) I) rho (sigma_i (x) I); noise on qubit A.
TwoQubitState apply_single_sided(const TwoQubitState& rho, const ChannelConfig& cfg, double p);
/// sum_ij w_i w_j (sigma_i (x) sigma_j) rho (sigma_i (x) sigma_j).
TwoQubitState apply_double_sided(const TwoQubitState& rho, const ChannelConfig& cfg, double p);
/// Dispatches on cfg.sides.
TwoQubitState apply_channel(const TwoQubitState& rho, const ChannelConfig& cfg, double p);

/// Same map on a lone qubit; used for reduced-state checks.
QubitState apply_to_qubit(const QubitState& rho, const ChannelConfig& cfg, double p);

}  // namespace nmqc
