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
#include <optional>
#include <span>
#include <vector>

#include "nmqc/sweep.hpp"

namespace nmqc {

/// Initial-QC bin. Bins are left-closed and right-open except the last, which
/// is closed so the standard set partitions [0, 1].
struct QCBin {
  double lower = 0.0;
  double upper = 0.1;
};

/// Ten bins of width 0.1 covering [0, 1].
std::vector<QCBin> standard_bins();
/// Index of the bin holding `q`. Values marginally outside [0, 1] from
/// round-off are clamped into the end bins.
std::size_t bin_of(double q, std::span<const QCBin> bins);

/// A scalar statistic that may be undefined (no collapsed or no revived
/// states). Undefined values are never reported as zero.
struct Statistic {
  std::optional<double> value;
  std::optional<double> std_error;
};

/// Per bin: regenerations of collapsed states / collapsed states.
std::vector<std::optional<double>> normalized_regeneration(std::span<const EventRecord> records,
                                                           std::span<const QCBin> bins);
/// Total regenerations over collapsed states divided by the collapsed count;
/// this equals the collapsed-population weighted mean of the per-bin ratios.
Statistic mean_regeneration(std::span<const EventRecord> records, std::span<const QCBin> bins);
/// Diagnostic: unweighted sum of the per-bin ratios divided by the collapsed
/// count.
Statistic mean_regeneration_bin_sum(std::span<const EventRecord> records, std::span<const QCBin> bins);
/// Mean p_c over collapsed states.
Statistic mean_critical_noise(std::span<const EventRecord> records);
/// Mean p_reg over regenerated states.
Statistic mean_regeneration_noise(std::span<const EventRecord> records);
/// Mean initial QC over regenerated states.
Statistic mean_initial_qc(std::span<const EventRecord> records);
/// 100 * regenerated / collapsed.
Statistic regeneration_percent(std::span<const EventRecord> records);

/// Normalized frequencies of `values` in bins of `bin_width` over [0, 1].
std::vector<double> qc_histogram(std::span<const double> values, double bin_width);

struct EnsembleStats {
  std::vector<QCBin> bins;
  std::vector<std::uint64_t> collapsed_in_bin;
  std::vector<std::uint64_t> regenerations_in_bin;
  std::vector<std::optional<double>> normalized_regeneration;
  Statistic mean_regeneration;
  Statistic mean_regeneration_bin_sum;
  Statistic mean_p_collapse;
  Statistic mean_p_regeneration;
  Statistic mean_initial_qc;
  Statistic regeneration_percent;
  Statistic mean_initial_qc_all;  // over every state, collapsed or not
  std::uint64_t n_total = 0;
  std::uint64_t n_collapsed = 0;
  std::uint64_t n_regenerated = 0;
};

/// All statistics at once. Results do not depend on the order of `records`:
/// every fold runs in ascending state index.
EnsembleStats summarize(std::span<const EventRecord> records,
                        std::span<const QCBin> bins = {});

}  // namespace nmqc
