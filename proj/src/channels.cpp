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

#include "nmqc/channels.hpp"

#include <array>
#include <sstream>
#include <string>

#include "nmqc/errors.hpp"

namespace nmqc {

namespace {

const std::array<Matrix4c, 4>& left_paulis() {
  static const std::array<Matrix4c, 4> ops = [] {
    std::array<Matrix4c, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = kron(pauli::by_index(i), pauli::identity());
    return out;
  }();
  return ops;
}

const std::array<Matrix4c, 16>& pair_paulis() {
  static const std::array<Matrix4c, 16> ops = [] {
    std::array<Matrix4c, 16> out;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) out[4 * i + j] = kron(pauli::by_index(i), pauli::by_index(j));
    }
    return out;
  }();
  return ops;
}

}  // namespace

std::string_view to_string(ChannelKind kind) {
  return kind == ChannelKind::Dephasing ? "dephasing" : "depolarizing";
}

std::string_view to_string(Sides sides) { return sides == Sides::Single ? "single" : "double"; }

ChannelKind parse_channel_kind(std::string_view text) {
  if (text == "dephasing") return ChannelKind::Dephasing;
  if (text == "depolarizing") return ChannelKind::Depolarizing;
  throw ConfigError("unknown channel kind '" + std::string(text) + "'");
}

Sides parse_sides(std::string_view text) {
  if (text == "single") return Sides::Single;
  if (text == "double") return Sides::Double;
  throw ConfigError("unknown sidedness '" + std::string(text) + "'");
}

double max_noise(ChannelKind kind) { return kind == ChannelKind::Dephasing ? 0.5 : 1.0; }

void ChannelConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
}

double PauliChannelWeights::operator[](int i) const {
  switch (i) {
    case 0: return identity;
    case 1: return x;
    case 2: return y;
    case 3: return z;
  }
  throw PreconditionError("pauli index must be in 0..3");
}

PauliChannelWeights channel_weights(ChannelKind kind, double alpha, double p) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw RangeError("alpha must lie in [0, 1]");
  const double p_max = max_noise(kind);
  if (!(p >= 0.0 && p <= p_max)) {
    std::ostringstream msg;
    msg << "noise parameter " << p << " outside [0, " << p_max << "] for " << to_string(kind);
    throw RangeError(msg.str());
  }
  PauliChannelWeights w;
  if (kind == ChannelKind::Dephasing) {
    w.identity = (1.0 - alpha * p) * (1.0 - p);
    w.z = (1.0 + alpha * (1.0 - p)) * p;
  } else {
    w.identity = (1.0 - 3.0 * alpha * p) * (1.0 - p);
    const double each = (1.0 + 3.0 * alpha * (1.0 - p)) * p / 3.0;
    w.x = w.y = w.z = each;
  }
  return w;
}

TwoQubitState apply_single_sided(const TwoQubitState& rho, const ChannelConfig& cfg, double p) {
  const PauliChannelWeights w = channel_weights(cfg, p);
  const auto& ops = left_paulis();
  const Matrix4c& m = rho.matrix();
  Matrix4c out = w.identity * m;
  for (int i = 1; i < 4; ++i) {
    if (w[i] == 0.0) continue;
    out.noalias() += w[i] * (ops[i] * m * ops[i]);
  }
  return TwoQubitState::trusted(out);
}

TwoQubitState apply_double_sided(const TwoQubitState& rho, const ChannelConfig& cfg, double p) {
  const PauliChannelWeights w = channel_weights(cfg, p);
  const auto& ops = pair_paulis();
  const Matrix4c& m = rho.matrix();
  Matrix4c out = (w.identity * w.identity) * m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double weight = w[i] * w[j];
      if ((i == 0 && j == 0) || weight == 0.0) continue;
      const Matrix4c& op = ops[4 * i + j];
      out.noalias() += weight * (op * m * op);
    }
  }
  return TwoQubitState::trusted(out);
}

TwoQubitState apply_channel(const TwoQubitState& rho, const ChannelConfig& cfg, double p) {
  return cfg.sides == Sides::Single ? apply_single_sided(rho, cfg, p) : apply_double_sided(rho, cfg, p);
}

QubitState apply_to_qubit(const QubitState& rho, const ChannelConfig& cfg, double p) {
  const PauliChannelWeights w = channel_weights(cfg, p);
  Matrix2c out = w.identity * rho.matrix();
  for (int i = 1; i < 4; ++i) {
    const Matrix2c& s = pauli::by_index(i);
    out += w[i] * (s * rho.matrix() * s);
  }
  return QubitState::trusted(out);
}

}  // namespace nmqc
