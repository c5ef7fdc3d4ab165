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

#include "nmqc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "nmqc/errors.hpp"
#include "nmqc/random_states.hpp"

namespace nmqc {

namespace {

constexpr std::uint64_t kBlockSize = 128;

std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_g6(*v) : std::string(); }

auto row_key(const ResultRow& r) {
  return std::make_tuple(static_cast<int>(r.kind), static_cast<int>(r.sides), r.rank, r.alpha,
                         static_cast<int>(r.measure));
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_output(const std::filesystem::path& path, std::ios::openmode mode = std::ios::trunc) {
  std::ofstream out(path, std::ios::out | mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

// Drops a trailing line without a newline (interrupted write).
std::string read_complete_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open record file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const auto last_newline = text.rfind('\n');
  text.resize(last_newline == std::string::npos ? 0 : last_newline + 1);
  return text;
}

// Number of leading state indices 0..k-1 whose records are all present.
std::uint64_t complete_prefix(const std::vector<StoredRecord>& records, std::size_t per_state) {
  std::map<std::uint64_t, std::size_t> counts;
  for (const auto& r : records) ++counts[r.event.index];
  std::uint64_t k = 0;
  for (const auto& [index, n] : counts) {
    if (index != k || n != per_state) break;
    ++k;
  }
  return k;
}

struct Column {
  const char* file;
  Statistic EnsembleStats::*field;
};

constexpr Column kColumns[] = {
    {"mean_regeneration.csv", &EnsembleStats::mean_regeneration},
    {"mean_regeneration_bin_sum.csv", &EnsembleStats::mean_regeneration_bin_sum},
    {"mean_p_collapse.csv", &EnsembleStats::mean_p_collapse},
    {"mean_p_regeneration.csv", &EnsembleStats::mean_p_regeneration},
    {"mean_initial_qc.csv", &EnsembleStats::mean_initial_qc},
    {"regeneration_percent.csv", &EnsembleStats::regeneration_percent},
    {"mean_initial_qc_all.csv", &EnsembleStats::mean_initial_qc_all},
};

std::string cell_prefix(const ResultRow& r) {
  std::ostringstream out;
  out << to_string(r.kind) << ',' << to_string(r.sides) << ',' << r.rank << ',' << format_g6(r.alpha) << ','
      << to_string(r.measure);
  return out.str();
}

}  // namespace

void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t)>& fn) {
  const auto threads = static_cast<std::uint64_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    while (!failed.load()) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::uint64_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<StoredRecord> simulate_state(const RunConfig& cfg, std::uint64_t index) {
  const RandomStateSpec spec{cfg.rank, cfg.ensemble_count, cfg.master_seed};
  const TwoQubitState rho0 = sample_state(spec, index);
  const SweepGrid grid = cfg.grid();
  std::vector<double> initial(cfg.measures.size());
  for (std::size_t m = 0; m < cfg.measures.size(); ++m) {
    initial[m] = evaluate_measure(rho0, cfg.measures[m], cfg.optimizer);
  }
  std::vector<StoredRecord> out;
  out.reserve(cfg.alpha_list.size() * cfg.measures.size());
  for (double alpha : cfg.alpha_list) {
    for (std::size_t m = 0; m < cfg.measures.size(); ++m) {
      const Trajectory traj = sweep(rho0, cfg.channel(alpha), grid, cfg.measures[m], cfg.optimizer);
      StoredRecord rec{alpha, cfg.measures[m], detect_events(traj, cfg.zero_threshold)};
      rec.event.index = index;
      rec.event.initial_qc = initial[m];
      out.push_back(rec);
    }
  }
  return out;
}

std::vector<StoredRecord> simulate_range(const RunConfig& cfg, std::uint64_t first, std::uint64_t last) {
  if (last < first) throw PreconditionError("simulate_range needs first <= last");
  std::vector<std::vector<StoredRecord>> per_state(last - first);
  parallel_for(last - first, cfg.resolved_workers(),
               [&](std::uint64_t k) { per_state[k] = simulate_state(cfg, first + k); });
  std::vector<StoredRecord> out;
  out.reserve((last - first) * cfg.alpha_list.size() * cfg.measures.size());
  for (auto& block : per_state) out.insert(out.end(), block.begin(), block.end());
  return out;
}

std::vector<ResultRow> aggregate(const RunConfig& cfg, std::span<const StoredRecord> records) {
  std::vector<ResultRow> rows;
  for (double alpha : cfg.alpha_list) {
    for (Measure measure : cfg.measures) {
      std::vector<EventRecord> events;
      for (const auto& r : records) {
        if (r.alpha == alpha && r.measure == measure) events.push_back(r.event);
      }
      ResultRow row;
      row.kind = cfg.kind;
      row.sides = cfg.sides;
      row.rank = cfg.rank;
      row.alpha = alpha;
      row.measure = measure;
      row.ensemble_count = events.size();
      row.seed = cfg.master_seed;
      row.stats = summarize(events);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<ResultRow> run_in_memory(const RunConfig& cfg) {
  cfg.validate();
  const auto records = simulate_range(cfg, 0, cfg.ensemble_count);
  return aggregate(cfg, records);
}

std::filesystem::path records_path_for(const RunConfig& cfg) {
  std::ostringstream name;
  name << "records_" << to_string(cfg.kind) << '_' << to_string(cfg.sides) << "_r" << cfg.rank << ".jsonl";
  return std::filesystem::path(cfg.output_dir) / name.str();
}

EnsembleOutput run_ensemble(const RunConfig& cfg, const ProgressCallback& progress) {
  cfg.validate();
  ensure_dir(cfg.output_dir);
  EnsembleOutput result;
  result.records_path = records_path_for(cfg);
  const std::size_t per_state = cfg.alpha_list.size() * cfg.measures.size();

  std::vector<StoredRecord> records;
  std::uint64_t start = 0;
  if (cfg.resume && std::filesystem::exists(result.records_path)) {
    std::istringstream existing(read_complete_lines(result.records_path));
    RecordFile file = parse_records(existing, result.records_path.string());
    if (!same_science(file.config, cfg)) {
      throw ConfigError("record file " + result.records_path.string() +
                        " was produced by a different configuration; rerun without resume");
    }
    start = std::min<std::uint64_t>(complete_prefix(file.records, per_state), cfg.ensemble_count);
    for (auto& r : file.records) {
      if (r.event.index < start) records.push_back(r);
    }
  }
  result.resumed_states = start;

  // Rewrite the kept prefix so the file always equals an uninterrupted run.
  {
    std::ofstream out = open_output(result.records_path);
    out << records_header_line(cfg) << '\n';
    for (const auto& r : records) out << record_line(r) << '\n';
    check_written(out, result.records_path);
  }
  if (progress) progress({start, cfg.ensemble_count});

  std::ofstream out = open_output(result.records_path, std::ios::app);
  for (std::uint64_t first = start; first < cfg.ensemble_count; first += kBlockSize) {
    const std::uint64_t last = std::min(cfg.ensemble_count, first + kBlockSize);
    const auto block = simulate_range(cfg, first, last);
    for (const auto& r : block) out << record_line(r) << '\n';
    check_written(out, result.records_path);
    records.insert(records.end(), block.begin(), block.end());
    if (progress) progress({last, cfg.ensemble_count});
  }
  result.rows = aggregate(cfg, records);
  return result;
}

std::vector<std::filesystem::path> emit_tables(std::span<const ResultRow> rows,
                                               const std::filesystem::path& dir) {
  if (rows.empty()) throw PreconditionError("emit_tables needs at least one row");
  ensure_dir(dir);
  std::vector<const ResultRow*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ResultRow* l, const ResultRow* r) { return row_key(*l) < row_key(*r); });

  std::vector<std::filesystem::path> written;
  for (const Column& column : kColumns) {
    const auto path = dir / column.file;
    std::ofstream out = open_output(path);
    out << "channel,sides,rank,alpha,measure,n_total,n_collapsed,n_regenerated,value,stderr\n";
    for (const ResultRow* r : sorted) {
      const Statistic& s = r->stats.*column.field;
      out << cell_prefix(*r) << ',' << r->stats.n_total << ',' << r->stats.n_collapsed << ','
          << r->stats.n_regenerated << ',' << format_optional(s.value) << ',' << format_optional(s.std_error)
          << '\n';
    }
    check_written(out, path);
    written.push_back(path);
  }

  const auto path = dir / "normalized_regeneration.csv";
  std::ofstream out = open_output(path);
  out << "channel,sides,rank,alpha,measure,bin_lower,bin_upper,n_collapsed_in_bin,regenerations_in_bin,value\n";
  for (const ResultRow* r : sorted) {
    const EnsembleStats& s = r->stats;
    for (std::size_t b = 0; b < s.bins.size(); ++b) {
      out << cell_prefix(*r) << ',' << format_g6(s.bins[b].lower) << ',' << format_g6(s.bins[b].upper) << ','
          << s.collapsed_in_bin[b] << ',' << s.regenerations_in_bin[b] << ','
          << format_optional(s.normalized_regeneration[b]) << '\n';
    }
  }
  check_written(out, path);
  written.push_back(path);
  return written;
}

std::vector<InitialQcHistogram> initial_qc_histograms(const RunConfig& cfg) {
  cfg.validate();
  const RandomStateSpec spec{cfg.rank, cfg.ensemble_count, cfg.master_seed};
  std::vector<std::vector<double>> values(cfg.measures.size(), std::vector<double>(cfg.ensemble_count));
  parallel_for(cfg.ensemble_count, cfg.resolved_workers(), [&](std::uint64_t i) {
    const TwoQubitState rho = sample_state(spec, i);
    for (std::size_t m = 0; m < cfg.measures.size(); ++m) {
      values[m][i] = evaluate_measure(rho, cfg.measures[m], cfg.optimizer);
    }
  });
  std::vector<InitialQcHistogram> out;
  for (std::size_t m = 0; m < cfg.measures.size(); ++m) {
    InitialQcHistogram h;
    h.rank = cfg.rank;
    h.measure = cfg.measures[m];
    h.bin_width = cfg.hist_bin_width;
    // QC values can overshoot [0, 1] by rounding; the histogram clamps them.
    h.frequency = qc_histogram(values[m], cfg.hist_bin_width);
    double sum = 0.0;
    for (double v : values[m]) sum += v;
    h.mean = sum / values[m].size();
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<std::filesystem::path> emit_histograms(std::span<const InitialQcHistogram> hists,
                                                   const std::filesystem::path& dir) {
  ensure_dir(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& h : hists) {
    std::ostringstream name;
    name << "hist_" << to_string(h.measure) << "_r" << h.rank << ".csv";
    const auto path = dir / name.str();
    std::ofstream out = open_output(path);
    out << "bin_lower,bin_upper,frequency\n";
    for (std::size_t b = 0; b < h.frequency.size(); ++b) {
      const double lower = b * h.bin_width;
      const double upper = std::min(1.0, (b + 1) * h.bin_width);
      out << format_g6(lower) << ',' << format_g6(upper) << ',' << format_g6(h.frequency[b]) << '\n';
    }
    check_written(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace nmqc
