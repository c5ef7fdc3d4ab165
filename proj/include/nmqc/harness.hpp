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
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "nmqc/ensemble_stats.hpp"
#include "nmqc/records.hpp"
#include "nmqc/run_config.hpp"

namespace nmqc {

/// One table cell: statistics of a (kind, sides, rank, alpha, measure) ensemble.
struct ResultRow {
  ChannelKind kind = ChannelKind::Dephasing;
  Sides sides = Sides::Single;
  int rank = 1;
  double alpha = 0.0;
  Measure measure = Measure::LogNegativity;
  std::uint64_t ensemble_count = 0;
  std::uint64_t seed = 0;
  EnsembleStats stats;
};

struct RunProgress {
  std::uint64_t completed = 0;  // states finished, including resumed ones
  std::uint64_t total = 0;
};
using ProgressCallback = std::function<void(const RunProgress&)>;

/// Runs fn(i) for i in [0, count) on `workers` threads. The first exception
/// thrown by any task is rethrown after all threads join.
void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t)>& fn);

/// Records of state `index` for every (alpha, measure) cell, alpha-major.
std::vector<StoredRecord> simulate_state(const RunConfig& cfg, std::uint64_t index);

/// Records of states [first, last), ascending by index, computed in parallel.
std::vector<StoredRecord> simulate_range(const RunConfig& cfg, std::uint64_t first, std::uint64_t last);

/// Folds records into one row per (alpha, measure) of cfg, in config order.
std::vector<ResultRow> aggregate(const RunConfig& cfg, std::span<const StoredRecord> records);

/// Full ensemble without persistence.
std::vector<ResultRow> run_in_memory(const RunConfig& cfg);

std::filesystem::path records_path_for(const RunConfig& cfg);

struct EnsembleOutput {
  std::vector<ResultRow> rows;
  std::filesystem::path records_path;
  std::uint64_t resumed_states = 0;
};

/// Runs the ensemble, appending per-state records to records_path_for(cfg)
/// block by block. With cfg.resume, the complete prefix of an existing record
/// file from the same configuration is kept and the run continues after it.
/// Output is identical to an uninterrupted run.
EnsembleOutput run_ensemble(const RunConfig& cfg, const ProgressCallback& progress = {});

/// Writes one CSV per statistic plus normalized_regeneration.csv into dir.
/// Rows are sorted by (channel, sides, rank, alpha, measure).
std::vector<std::filesystem::path> emit_tables(std::span<const ResultRow> rows,
                                               const std::filesystem::path& dir);

struct InitialQcHistogram {
  int rank = 1;
  Measure measure = Measure::LogNegativity;
  double bin_width = 0.1;
  std::vector<double> frequency;
  double mean = 0.0;
};

/// Initial-QC distributions of cfg.ensemble_count states of cfg.rank.
std::vector<InitialQcHistogram> initial_qc_histograms(const RunConfig& cfg);

/// Writes hist_<measure>_r<rank>.csv per histogram.
std::vector<std::filesystem::path> emit_histograms(std::span<const InitialQcHistogram> hists,
                                                   const std::filesystem::path& dir);

}  // namespace nmqc
