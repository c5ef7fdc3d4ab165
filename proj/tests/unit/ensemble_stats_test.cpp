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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "nmqc/ensemble_stats.hpp"
#include "nmqc/random_states.hpp"

namespace nmqc {
namespace {

using testing::Gen;

EventRecord record(std::uint64_t index, double initial_qc, std::optional<double> p_c = std::nullopt,
                   std::optional<double> p_reg = std::nullopt, int revivals = 0) {
  EventRecord r;
  r.index = index;
  r.initial_qc = initial_qc;
  r.collapsed = p_c.has_value();
  r.p_c = p_c;
  r.regenerated = p_reg.has_value();
  r.p_reg = p_reg;
  r.regeneration_count = revivals;
  return r;
}

std::vector<EventRecord> simulate(int rank, const ChannelConfig& cfg, Measure measure, std::uint64_t count,
                                  int steps, std::uint64_t seed = 42) {
  const RandomStateSpec spec{rank, count, seed};
  const SweepGrid grid = SweepGrid::for_channel(cfg.kind, steps);
  std::vector<EventRecord> out;
  for (std::uint64_t i = 0; i < count; ++i) {
    EventRecord r = detect_events(sweep(sample_state(spec, i), cfg, grid, measure), 1e-5);
    r.index = i;
    out.push_back(r);
  }
  return out;
}

TEST(Bins, StandardBinsPartitionTheUnitInterval) {
  const auto bins = standard_bins();
  ASSERT_EQ(bins.size(), 10u);
  EXPECT_EQ(bins.front().lower, 0.0);
  EXPECT_EQ(bins.back().upper, 1.0);
  for (std::size_t i = 0; i < bins.size(); ++i) {
    EXPECT_NEAR(bins[i].upper - bins[i].lower, 0.1, 1e-15);
    if (i > 0) {
      EXPECT_EQ(bins[i].lower, bins[i - 1].upper);
    }
  }
}

TEST(Bins, LeftClosedRightOpenWithClosedLastBin) {
  const auto bins = standard_bins();
  EXPECT_EQ(bin_of(0.0, bins), 0u);
  EXPECT_EQ(bin_of(0.1, bins), 1u);
  EXPECT_EQ(bin_of(0.0999999, bins), 0u);
  EXPECT_EQ(bin_of(0.95, bins), 9u);
  EXPECT_EQ(bin_of(1.0, bins), 9u);
}

TEST(NormalizedRegeneration, PerBinRatiosAndUndefinedBins) {
  std::vector<EventRecord> rs;
  for (std::uint64_t i = 0; i < 10; ++i) rs.push_back(record(i, 0.85, 0.2, 0.3, 1));
  for (std::uint64_t i = 10; i < 15; ++i) rs.push_back(record(i, 0.35, 0.2));
  rs.push_back(record(15, 0.55));  // never collapses
  const auto r = normalized_regeneration(rs, standard_bins());
  ASSERT_EQ(r.size(), 10u);
  EXPECT_DOUBLE_EQ(*r[8], 1.0);
  EXPECT_DOUBLE_EQ(*r[3], 0.0);
  EXPECT_FALSE(r[5].has_value());
  EXPECT_FALSE(r[0].has_value());
}

TEST(MeanRegeneration, TotalRevivalsOverCollapsedStates) {
  std::vector<EventRecord> rs = {record(0, 0.5, 0.1, 0.2, 2), record(1, 0.5, 0.1, 0.2, 1), record(2, 0.2, 0.1),
                                 record(3, 0.9)};
  EXPECT_DOUBLE_EQ(*mean_regeneration(rs, standard_bins()).value, 1.0);
  rs.push_back(record(4, 0.95, 0.3, 0.35, 3));
  EXPECT_DOUBLE_EQ(*mean_regeneration(rs, standard_bins()).value, 1.5);
}

TEST(MeanRegeneration, BinSumDiagnosticSumsPerBinRatios) {
  const std::vector<EventRecord> rs = {record(0, 0.15, 0.1, 0.2, 1), record(1, 0.15, 0.1),
                                       record(2, 0.75, 0.1, 0.2, 2)};
  // Bin 1: 1/2, bin 7: 2/1; total 2.5 over 3 collapsed.
  EXPECT_DOUBLE_EQ(*mean_regeneration_bin_sum(rs, standard_bins()).value, 2.5 / 3.0);
  EXPECT_DOUBLE_EQ(*mean_regeneration(rs, standard_bins()).value, 1.0);
}

TEST(Statistics, UndefinedWithoutQualifyingStates) {
  const std::vector<EventRecord> none_collapsed = {record(0, 0.4), record(1, 0.6)};
  EXPECT_FALSE(mean_regeneration(none_collapsed, standard_bins()).value.has_value());
  EXPECT_FALSE(mean_regeneration_bin_sum(none_collapsed, standard_bins()).value.has_value());
  EXPECT_FALSE(mean_critical_noise(none_collapsed).value.has_value());
  EXPECT_FALSE(regeneration_percent(none_collapsed).value.has_value());
  const std::vector<EventRecord> no_revivals = {record(0, 0.4, 0.2), record(1, 0.6, 0.3)};
  EXPECT_FALSE(mean_regeneration_noise(no_revivals).value.has_value());
  EXPECT_FALSE(mean_initial_qc(no_revivals).value.has_value());
  EXPECT_DOUBLE_EQ(*regeneration_percent(no_revivals).value, 0.0);
  EXPECT_DOUBLE_EQ(*mean_regeneration(no_revivals, standard_bins()).value, 0.0);
}

TEST(Statistics, TrivialExamples) {
  const std::vector<EventRecord> same_pc = {record(0, 0.4, 0.25), record(1, 0.6, 0.25), record(2, 0.1, 0.25)};
  EXPECT_DOUBLE_EQ(*mean_critical_noise(same_pc).value, 0.25);
  EXPECT_DOUBLE_EQ(*mean_regeneration_noise(std::vector<EventRecord>{record(0, 0.3, 0.2, 0.42, 1)}).value, 0.42);
  const std::vector<EventRecord> revivers = {record(0, 0.9, 0.1, 0.2, 1), record(1, 0.9, 0.2, 0.3, 1),
                                             record(2, 0.3, 0.2)};
  EXPECT_DOUBLE_EQ(*mean_initial_qc(revivers).value, 0.9);
  EXPECT_NEAR(*regeneration_percent(revivers).value, 200.0 / 3.0, 1e-12);
}

TEST(Histogram, SingleBinAndNormalization) {
  const std::vector<double> same(25, 0.42);
  const auto h = qc_histogram(same, 0.1);
  ASSERT_EQ(h.size(), 10u);
  EXPECT_DOUBLE_EQ(h[4], 1.0);
  EXPECT_DOUBLE_EQ(std::accumulate(h.begin(), h.end(), 0.0), 1.0);
  Gen gen(1);
  std::vector<double> values(1000);
  for (double& v : values) v = gen.uniform();
  values.push_back(1.0);
  const auto g = qc_histogram(values, 0.05);
  ASSERT_EQ(g.size(), 20u);
  EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 1.0, 1e-12);
  EXPECT_THROW(qc_histogram(values, 0.0), PreconditionError);
}

TEST(Summarize, CountsAreConsistentAndBinned) {
  Gen gen(2);
  std::vector<EventRecord> rs;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const double q = gen.uniform();
    const double u = gen.uniform();
    if (u < 0.3) {
      rs.push_back(record(i, q));
    } else if (u < 0.6) {
      rs.push_back(record(i, q, gen.uniform(0.0, 0.5)));
    } else {
      rs.push_back(record(i, q, 0.2, 0.3, gen.integer(1, 3)));
    }
  }
  const EnsembleStats s = summarize(rs);
  EXPECT_EQ(s.n_total, 500u);
  EXPECT_LE(s.n_regenerated, s.n_collapsed);
  EXPECT_LE(s.n_collapsed, s.n_total);
  EXPECT_EQ(std::accumulate(s.collapsed_in_bin.begin(), s.collapsed_in_bin.end(), std::uint64_t{0}), s.n_collapsed);
  const double percent = *s.regeneration_percent.value;
  EXPECT_GE(percent, 0.0);
  EXPECT_LE(percent, 100.0);
  EXPECT_GT(*s.mean_regeneration.value, 1.0 * s.n_regenerated / s.n_collapsed);
}

TEST(Summarize, BitIdenticalUnderPermutation) {
  Gen gen(3);
  std::vector<EventRecord> rs;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const double q = gen.uniform();
    rs.push_back(gen.uniform() < 0.5 ? record(i, q, gen.uniform(0.0, 0.5))
                                     : record(i, q, gen.uniform(0.0, 0.3), gen.uniform(0.3, 0.5), gen.integer(1, 2)));
  }
  const EnsembleStats base = summarize(rs);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(rs.begin(), rs.end(), gen.engine());
    const EnsembleStats s = summarize(rs);
    EXPECT_EQ(s.mean_regeneration.value, base.mean_regeneration.value);
    EXPECT_EQ(s.mean_regeneration.std_error, base.mean_regeneration.std_error);
    EXPECT_EQ(s.mean_regeneration_bin_sum.value, base.mean_regeneration_bin_sum.value);
    EXPECT_EQ(s.mean_p_collapse.value, base.mean_p_collapse.value);
    EXPECT_EQ(s.mean_p_collapse.std_error, base.mean_p_collapse.std_error);
    EXPECT_EQ(s.mean_p_regeneration.value, base.mean_p_regeneration.value);
    EXPECT_EQ(s.mean_initial_qc.value, base.mean_initial_qc.value);
    EXPECT_EQ(s.mean_initial_qc_all.value, base.mean_initial_qc_all.value);
    EXPECT_EQ(s.regeneration_percent.value, base.regeneration_percent.value);
    EXPECT_EQ(s.normalized_regeneration, base.normalized_regeneration);
  }
}

TEST(EnsembleTrends, MarkovianDephasingNeverRevivesEntanglement) {
  for (int rank = 1; rank <= 4; ++rank) {
    for (Sides sides : {Sides::Single, Sides::Double}) {
      const auto rs = simulate(rank, ChannelConfig{ChannelKind::Dephasing, 0.0, sides}, Measure::LogNegativity, 300, 200);
      const EnsembleStats s = summarize(rs);
      ASSERT_GT(s.n_collapsed, 0u);
      EXPECT_DOUBLE_EQ(*s.mean_regeneration.value, 0.0) << "rank " << rank;
    }
  }
}

TEST(EnsembleTrends, StronglyEntangledInputsReviveOnceUnderModerateMemory) {
  const auto rs = simulate(2, ChannelConfig{ChannelKind::Dephasing, 0.3, Sides::Single}, Measure::LogNegativity, 2000, 500);
  const auto r = normalized_regeneration(rs, standard_bins());
  for (std::size_t b : {8u, 9u}) {
    if (r[b]) {
      EXPECT_NEAR(*r[b], 1.0, 0.05) << "bin " << b;
    }
  }
  ASSERT_TRUE(r[8].has_value());
}

TEST(EnsembleTrends, EntanglementNeededForRevivalDecreasesWithMemory) {
  double previous = 2.0;
  for (double alpha : {0.3, 0.6, 0.9}) {
    const auto rs = simulate(2, ChannelConfig{ChannelKind::Dephasing, alpha, Sides::Single}, Measure::LogNegativity, 2000, 500);
    const double q = *mean_initial_qc(rs).value;
    EXPECT_LT(q, previous) << "alpha " << alpha;
    previous = q;
  }
}

TEST(EnsembleTrends, DiscordRevivesCloseToItsCollapseButEntanglementDoesNot) {
  const auto qd = summarize(simulate(2, ChannelConfig{ChannelKind::Dephasing, 0.9, Sides::Double}, Measure::Discord, 200, 100));
  const auto ln = summarize(simulate(2, ChannelConfig{ChannelKind::Dephasing, 0.9, Sides::Single}, Measure::LogNegativity, 2000, 500));
  ASSERT_TRUE(qd.mean_p_regeneration.value && qd.mean_p_collapse.value);
  ASSERT_TRUE(ln.mean_p_regeneration.value && ln.mean_p_collapse.value);
  EXPECT_LE(*qd.mean_p_regeneration.value - *qd.mean_p_collapse.value, 0.06);
  EXPECT_GT(*ln.mean_p_regeneration.value - *ln.mean_p_collapse.value, 0.18);
}

TEST(InitialQc, RankTwoDiscordStaysBelowNineTenths) {
  const RandomStateSpec spec{2, 2000, 42};
  std::vector<double> qd;
  for (std::uint64_t i = 0; i < spec.count; ++i) qd.push_back(quantum_discord(sample_state(spec, i)).discord);
  EXPECT_EQ(qc_histogram(qd, 0.1).back(), 0.0);
}

TEST(InitialQc, MeanCorrelationsDecreaseWithRank) {
  double prev_ln = 2.0, prev_qd = 2.0;
  for (int rank = 1; rank <= 4; ++rank) {
    const RandomStateSpec spec{rank, 2000, 42};
    double ln = 0.0, qd = 0.0;
    for (std::uint64_t i = 0; i < spec.count; ++i) {
      const TwoQubitState rho = sample_state(spec, i);
      ln += log_negativity(rho);
      qd += quantum_discord(rho).discord;
    }
    ln /= spec.count;
    qd /= spec.count;
    EXPECT_LT(ln, prev_ln) << "rank " << rank;
    EXPECT_LT(qd, prev_qd) << "rank " << rank;
    prev_ln = ln;
    prev_qd = qd;
  }
}

}  // namespace
}  // namespace nmqc
