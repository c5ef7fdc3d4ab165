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

#include "nmqc/ensemble_stats.hpp"

#include <algorithm>
#include <cmath>

namespace nmqc {

namespace {

std::vector<const EventRecord*> by_index(std::span<const EventRecord> records) {
  std::vector<const EventRecord*> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(&r);
  std::stable_sort(out.begin(), out.end(),
                   [](const EventRecord* l, const EventRecord* r) { return l->index < r->index; });
  return out;
}

// Mean and standard error of the mean, summed in the given order.
Statistic mean_of(const std::vector<double>& xs) {
  Statistic s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / xs.size();
  s.value = mean;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    s.std_error = std::sqrt(ss / (xs.size() - 1) / xs.size());
  }
  return s;
}

std::span<const QCBin> bins_or_default(std::span<const QCBin> bins, std::vector<QCBin>& storage) {
  if (!bins.empty()) return bins;
  storage = standard_bins();
  return storage;
}

}  // namespace

std::vector<QCBin> standard_bins() {
  std::vector<QCBin> out;
  for (int i = 0; i < 10; ++i) out.push_back(QCBin{i / 10.0, (i + 1) / 10.0});
  return out;
}

std::size_t bin_of(double q, std::span<const QCBin> bins) {
  for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
    if (q < bins[i].upper) return i;
  }
  return bins.size() - 1;
}

std::vector<std::optional<double>> normalized_regeneration(std::span<const EventRecord> records,
                                                           std::span<const QCBin> bins) {
  std::vector<std::uint64_t> collapsed(bins.size(), 0);
  std::vector<std::uint64_t> regenerations(bins.size(), 0);
  for (const EventRecord* r : by_index(records)) {
    if (!r->collapsed) continue;
    const std::size_t b = bin_of(r->initial_qc, bins);
    ++collapsed[b];
    regenerations[b] += r->regeneration_count;
  }
  std::vector<std::optional<double>> out(bins.size());
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (collapsed[b] > 0) out[b] = static_cast<double>(regenerations[b]) / collapsed[b];
  }
  return out;
}

Statistic mean_regeneration(std::span<const EventRecord> records, std::span<const QCBin> bins) {
  (void)bins;  // the bins partition [0, 1], so every collapsed state counts once
  std::vector<double> counts;
  for (const EventRecord* r : by_index(records)) {
    if (r->collapsed) counts.push_back(r->regeneration_count);
  }
  return mean_of(counts);
}

Statistic mean_regeneration_bin_sum(std::span<const EventRecord> records, std::span<const QCBin> bins) {
  std::uint64_t n_collapsed = 0;
  for (const auto& r : records) n_collapsed += r.collapsed ? 1 : 0;
  Statistic s;
  if (n_collapsed == 0) return s;
  double sum = 0.0;
  for (const auto& v : normalized_regeneration(records, bins)) {
    if (v) sum += *v;
  }
  s.value = sum / n_collapsed;
  return s;
}

Statistic mean_critical_noise(std::span<const EventRecord> records) {
  std::vector<double> xs;
  for (const EventRecord* r : by_index(records)) {
    if (r->collapsed && r->p_c) xs.push_back(*r->p_c);
  }
  return mean_of(xs);
}

Statistic mean_regeneration_noise(std::span<const EventRecord> records) {
  std::vector<double> xs;
  for (const EventRecord* r : by_index(records)) {
    if (r->regenerated && r->p_reg) xs.push_back(*r->p_reg);
  }
  return mean_of(xs);
}

Statistic mean_initial_qc(std::span<const EventRecord> records) {
  std::vector<double> xs;
  for (const EventRecord* r : by_index(records)) {
    if (r->regenerated) xs.push_back(r->initial_qc);
  }
  return mean_of(xs);
}

Statistic regeneration_percent(std::span<const EventRecord> records) {
  std::uint64_t collapsed = 0;
  std::uint64_t regenerated = 0;
  for (const auto& r : records) {
    collapsed += r.collapsed ? 1 : 0;
    regenerated += r.regenerated ? 1 : 0;
  }
  Statistic s;
  if (collapsed == 0) return s;
  const double q = static_cast<double>(regenerated) / collapsed;
  s.value = 100.0 * q;
  s.std_error = 100.0 * std::sqrt(q * (1.0 - q) / collapsed);
  return s;
}

std::vector<double> qc_histogram(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 1.0)) throw PreconditionError("histogram bin width must lie in (0, 1]");
  const auto n_bins = static_cast<std::size_t>(std::ceil(1.0 / bin_width - 1e-9));
  std::vector<double> out(n_bins, 0.0);
  if (values.empty()) return out;
  for (double v : values) {
    auto b = static_cast<std::ptrdiff_t>(std::floor(v / bin_width));
    b = std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(n_bins) - 1);
    out[b] += 1.0;
  }
  for (double& f : out) f /= values.size();
  return out;
}

EnsembleStats summarize(std::span<const EventRecord> records, std::span<const QCBin> bins) {
  std::vector<QCBin> storage;
  bins = bins_or_default(bins, storage);
  EnsembleStats s;
  s.bins.assign(bins.begin(), bins.end());
  s.collapsed_in_bin.assign(bins.size(), 0);
  s.regenerations_in_bin.assign(bins.size(), 0);
  for (const auto& r : records) {
    if (!r.collapsed) continue;
    const std::size_t b = bin_of(r.initial_qc, bins);
    ++s.collapsed_in_bin[b];
    s.regenerations_in_bin[b] += r.regeneration_count;
  }
  s.normalized_regeneration = normalized_regeneration(records, bins);
  s.mean_regeneration = mean_regeneration(records, bins);
  s.mean_regeneration_bin_sum = mean_regeneration_bin_sum(records, bins);
  s.mean_p_collapse = mean_critical_noise(records);
  s.mean_p_regeneration = mean_regeneration_noise(records);
  s.mean_initial_qc = mean_initial_qc(records);
  s.regeneration_percent = regeneration_percent(records);
  std::vector<double> all;
  for (const EventRecord* r : by_index(records)) all.push_back(r->initial_qc);
  s.mean_initial_qc_all = mean_of(all);
  s.n_total = records.size();
  for (const auto& r : records) {
    s.n_collapsed += r.collapsed ? 1 : 0;
    s.n_regenerated += r.regenerated ? 1 : 0;
  }
  return s;
}

}  // namespace nmqc
