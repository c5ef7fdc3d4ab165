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

#include "nmqc/sweep.hpp"

#include <sstream>

namespace nmqc {

SweepGrid SweepGrid::for_channel(ChannelKind kind, int steps) {
  return SweepGrid{0.0, max_noise(kind), steps};
}

double SweepGrid::at(int j) const {
  if (j == steps) return p_max;
  return p_min + (p_max - p_min) * j / steps;
}

std::vector<double> SweepGrid::values() const {
  std::vector<double> out(size());
  for (int j = 0; j < size(); ++j) out[j] = at(j);
  return out;
}

void SweepGrid::validate(ChannelKind kind) const {
  if (steps < 1) throw ConfigError("sweep grid needs at least one step");
  if (!(p_min >= 0.0 && p_min < p_max && p_max <= max_noise(kind))) {
    std::ostringstream msg;
    msg << "sweep grid [" << p_min << ", " << p_max << "] outside the " << to_string(kind) << " range";
    throw RangeError(msg.str());
  }
}

Trajectory sweep(const TwoQubitState& rho0, const ChannelConfig& cfg, const SweepGrid& grid,
                 Measure measure, const OptimizerSettings& optimizer) {
  grid.validate(cfg.kind);
  Trajectory out;
  out.measure = measure;
  out.p_values = grid.values();
  out.qc_values.reserve(out.p_values.size());
  for (double p : out.p_values) {
    out.qc_values.push_back(evaluate_measure(apply_channel(rho0, cfg, p), measure, optimizer));
  }
  return out;
}

EventRecord detect_events(const Trajectory& trajectory, double zero_threshold) {
  const auto& qc = trajectory.qc_values;
  const auto& p = trajectory.p_values;
  if (qc.empty() || qc.size() != p.size()) {
    throw PreconditionError("detect_events needs a nonempty trajectory with matching lengths");
  }
  EventRecord rec;
  rec.initial_qc = qc.front();
  bool seen_above = false;
  bool below = false;
  for (std::size_t j = 0; j < qc.size(); ++j) {
    const bool above = qc[j] >= zero_threshold;
    if (!rec.collapsed) {
      if (above) {
        seen_above = true;
      } else if (seen_above) {
        rec.collapsed = true;
        rec.p_c = p[j];
        below = true;
      }
      continue;
    }
    if (below && above) {
      ++rec.regeneration_count;
      if (!rec.regenerated) {
        rec.regenerated = true;
        rec.p_reg = p[j];
      }
      below = false;
    } else if (!below && !above) {
      below = true;
    }
  }
  return rec;
}

}  // namespace nmqc
