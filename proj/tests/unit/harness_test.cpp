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

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "nmqc/harness.hpp"
#include "nmqc/records.hpp"
#include "nmqc/run_config.hpp"

namespace nmqc {
namespace {

namespace fs = std::filesystem;

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    path_ = fs::temp_directory_path() /
            ("nmqc_test_" + tag + "_" + std::to_string(std::random_device{}()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig small_config(const fs::path& dir) {
  RunConfig cfg;
  cfg.kind = ChannelKind::Dephasing;
  cfg.sides = Sides::Double;
  cfg.rank = 2;
  cfg.ensemble_count = 300;
  cfg.master_seed = 2026;
  cfg.grid_steps = 40;
  cfg.alpha_list = {0.0, 0.9};
  cfg.measures = {Measure::LogNegativity, Measure::Discord};
  cfg.output_dir = dir.string();
  cfg.workers = 1;
  return cfg;
}

TEST(RunConfig, DefaultsAreValid) {
  EXPECT_NO_THROW(RunConfig{}.validate());
  EXPECT_EQ(RunConfig{}.grid_steps, 500);
  EXPECT_EQ(RunConfig{}.zero_threshold, 1e-5);
}

TEST(RunConfig, InvalidFieldsAreRejectedBeforeAnyCompute) {
  auto expect_bad = [](auto mutate) {
    RunConfig cfg;
    mutate(cfg);
    EXPECT_THROW(cfg.validate(), ConfigError);
  };
  expect_bad([](RunConfig& c) { c.rank = 5; });
  expect_bad([](RunConfig& c) { c.ensemble_count = 0; });
  expect_bad([](RunConfig& c) { c.grid_steps = 0; });
  expect_bad([](RunConfig& c) { c.zero_threshold = 0.0; });
  expect_bad([](RunConfig& c) { c.measures.clear(); });
  expect_bad([](RunConfig& c) { c.measures = {Measure::Discord, Measure::Discord}; });
  expect_bad([](RunConfig& c) { c.alpha_list = {0.2, 1.2}; });
  expect_bad([](RunConfig& c) { c.alpha_list = {0.2, 0.2}; });
  expect_bad([](RunConfig& c) { c.workers = -1; });
  expect_bad([](RunConfig& c) { c.optimizer.phi_steps = 0; });
}

TEST(RunConfig, ConfigTextUsesShortestRoundTripNumbers) {
  const std::string text = RunConfig{}.to_config_text();
  EXPECT_NE(text.find("alpha_list = [0, 0.2, 0.3, 0.5, 0.6, 0.7, 0.8, 0.9]"), std::string::npos) << text;
  EXPECT_NE(text.find("zero_threshold = 1e-05"), std::string::npos) << text;
  EXPECT_NE(text.find("channel = \"dephasing\""), std::string::npos) << text;
}

TEST(RunConfig, SameScienceIgnoresExecutionFields) {
  RunConfig a, b;
  b.workers = 7;
  b.resume = true;
  b.output_dir = "elsewhere";
  b.ensemble_count = 10;
  EXPECT_TRUE(same_science(a, b));
  b.master_seed = 1;
  EXPECT_FALSE(same_science(a, b));
}

TEST(Records, RoundTripIsExact) {
  RunConfig cfg;
  cfg.alpha_list = {0.1 + 0.2, 0.7};
  std::vector<StoredRecord> records;
  StoredRecord a;
  a.alpha = 0.1 + 0.2;
  a.measure = Measure::Discord;
  a.event.index = 3;
  a.event.initial_qc = 0.123456789012345678;
  a.event.collapsed = true;
  a.event.p_c = 1.0 / 3.0;
  a.event.regenerated = true;
  a.event.p_reg = 0.4567;
  a.event.regeneration_count = 2;
  StoredRecord b;
  b.alpha = 0.7;
  b.event.index = 4;
  b.event.initial_qc = 1e-17;
  records = {a, b};
  std::stringstream file;
  file << records_header_line(cfg) << '\n';
  for (const auto& r : records) file << record_line(r) << '\n';
  const RecordFile parsed = parse_records(file, "memory");
  EXPECT_TRUE(same_science(parsed.config, cfg));
  ASSERT_EQ(parsed.records.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& x = parsed.records[i];
    const auto& y = records[i];
    EXPECT_EQ(x.alpha, y.alpha);
    EXPECT_EQ(x.measure, y.measure);
    EXPECT_EQ(x.event.index, y.event.index);
    EXPECT_EQ(x.event.initial_qc, y.event.initial_qc);
    EXPECT_EQ(x.event.collapsed, y.event.collapsed);
    EXPECT_EQ(x.event.p_c, y.event.p_c);
    EXPECT_EQ(x.event.regenerated, y.event.regenerated);
    EXPECT_EQ(x.event.p_reg, y.event.p_reg);
    EXPECT_EQ(x.event.regeneration_count, y.event.regeneration_count);
  }
}

TEST(Records, UndefinedNoiseValuesSerializeAsNull) {
  StoredRecord r;
  r.event.index = 0;
  const std::string line = record_line(r);
  EXPECT_NE(line.find("\"p_c\":null"), std::string::npos) << line;
  EXPECT_NE(line.find("\"p_reg\":null"), std::string::npos) << line;
}

TEST(Records, ForeignOrDamagedFilesAreRejected) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_records(in, "memory");
  };
  const std::string header = records_header_line(RunConfig{});
  EXPECT_THROW(parse("{\"schema\":\"other\",\"version\":1}\n"), IoError);
  std::string future = header;
  future.replace(future.find("\"version\":1"), 11, "\"version\":2");
  EXPECT_THROW(parse(future + "\n"), IoError);
  EXPECT_THROW(parse(header + "\n{not json\n"), IoError);
  EXPECT_THROW(parse(header + "\n{\"index\":0}\n"), IoError);
  EXPECT_THROW(read_records("/nonexistent/nmqc/records.jsonl"), IoError);
}

TEST(Harness, ParallelForVisitsEveryIndexOnceAndPropagatesErrors) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::uint64_t i) { ++hits[i]; });
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  EXPECT_THROW(parallel_for(100, 3, [](std::uint64_t i) {
                 if (i == 42) throw IoError("boom");
               }),
               IoError);
}

TEST(Harness, OneRowPerAlphaAndMeasure) {
  ScratchDir dir("rows");
  RunConfig cfg = small_config(dir.path());
  cfg.ensemble_count = 60;
  const auto rows = run_in_memory(cfg);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.stats.n_total, 60u);
    EXPECT_EQ(row.rank, 2);
    EXPECT_EQ(row.seed, 2026u);
    if (row.alpha == 0.0 && row.measure == Measure::LogNegativity) {
      EXPECT_DOUBLE_EQ(*row.stats.mean_regeneration.value, 0.0);
    }
  }
}

TEST(Harness, SingleSidedDepolarizingNeverRevivesEntanglement) {
  ScratchDir dir("depol");
  RunConfig cfg = small_config(dir.path());
  cfg.kind = ChannelKind::Depolarizing;
  cfg.sides = Sides::Single;
  cfg.measures = {Measure::LogNegativity};
  cfg.alpha_list = {0.0, 0.5, 0.9};
  cfg.grid_steps = 200;
  for (int rank = 1; rank <= 4; ++rank) {
    cfg.rank = rank;
    for (const auto& row : run_in_memory(cfg)) {
      ASSERT_TRUE(row.stats.regeneration_percent.value.has_value());
      EXPECT_EQ(*row.stats.regeneration_percent.value, 0.0) << "rank " << rank << " alpha " << row.alpha;
    }
  }
}

TEST(Harness, OutputsAreIndependentOfWorkerCount) {
  ScratchDir one("w1"), three("w3");
  RunConfig a = small_config(one.path());
  RunConfig b = small_config(three.path());
  b.workers = 3;
  const auto ra = run_ensemble(a);
  const auto rb = run_ensemble(b);
  EXPECT_EQ(slurp(ra.records_path), slurp(rb.records_path));
  const auto fa = emit_tables(ra.rows, one.path());
  const auto fb = emit_tables(rb.rows, three.path());
  ASSERT_EQ(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(slurp(fa[i]), slurp(fb[i])) << fa[i];
}

TEST(Harness, ResumeAfterTruncationReproducesTheUninterruptedRun) {
  ScratchDir dir("resume");
  RunConfig cfg = small_config(dir.path());
  const auto full = run_ensemble(cfg);
  const std::string reference = slurp(full.records_path);
  const auto reference_tables = emit_tables(full.rows, dir.path() / "reference");

  // Keep the header and 333 records, then cut the next line mid-way.
  std::istringstream lines(reference);
  std::string line, damaged;
  for (int i = 0; i < 334 && std::getline(lines, line); ++i) damaged += line + '\n';
  std::getline(lines, line);
  damaged += line.substr(0, line.size() / 2);
  std::ofstream(full.records_path, std::ios::binary | std::ios::trunc) << damaged;

  cfg.resume = true;
  const auto resumed = run_ensemble(cfg);
  EXPECT_EQ(resumed.resumed_states, 333u / 4u);
  EXPECT_EQ(slurp(resumed.records_path), reference);
  const auto tables = emit_tables(resumed.rows, dir.path() / "resumed");
  for (std::size_t i = 0; i < tables.size(); ++i) EXPECT_EQ(slurp(tables[i]), slurp(reference_tables[i]));
}

TEST(Harness, ResumeRefusesRecordsFromAnotherConfiguration) {
  ScratchDir dir("mismatch");
  RunConfig cfg = small_config(dir.path());
  cfg.ensemble_count = 20;
  run_ensemble(cfg);
  cfg.master_seed = 7;
  cfg.resume = true;
  EXPECT_THROW(run_ensemble(cfg), ConfigError);
}

TEST(Harness, AggregationIgnoresRecordOrder) {
  ScratchDir dir("order");
  RunConfig cfg = small_config(dir.path());
  cfg.ensemble_count = 100;
  auto records = simulate_range(cfg, 0, cfg.ensemble_count);
  const auto a = emit_tables(aggregate(cfg, records), dir.path() / "a");
  std::mt19937_64 eng(5);
  std::shuffle(records.begin(), records.end(), eng);
  const auto b = emit_tables(aggregate(cfg, records), dir.path() / "b");
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(slurp(a[i]), slurp(b[i]));
}

TEST(Tables, HeaderFormattingAndUndefinedCells) {
  ScratchDir dir("tables");
  ResultRow row;
  row.kind = ChannelKind::Depolarizing;
  row.sides = Sides::Double;
  row.rank = 3;
  row.alpha = 0.7;
  row.measure = Measure::Discord;
  row.ensemble_count = 3;
  std::vector<EventRecord> rs(3);
  for (std::uint64_t i = 0; i < 3; ++i) {
    rs[i].index = i;
    rs[i].initial_qc = 0.5;
    rs[i].collapsed = true;
    rs[i].p_c = 1.0 / 3.0;
  }
  row.stats = summarize(rs);
  const std::vector<ResultRow> rows = {row};
  emit_tables(rows, dir.path());
  const std::string pc = slurp(dir.path() / "mean_p_collapse.csv");
  EXPECT_EQ(pc,
            "channel,sides,rank,alpha,measure,n_total,n_collapsed,n_regenerated,value,stderr\n"
            "depolarizing,double,3,0.7,QD,3,3,0,0.333333,0\n");
  const std::string preg = slurp(dir.path() / "mean_p_regeneration.csv");
  EXPECT_NE(preg.find("depolarizing,double,3,0.7,QD,3,3,0,,\n"), std::string::npos) << preg;
  const std::string norm = slurp(dir.path() / "normalized_regeneration.csv");
  EXPECT_NE(norm.find("depolarizing,double,3,0.7,QD,0.5,0.6,3,0,0\n"), std::string::npos) << norm;
  EXPECT_NE(norm.find("depolarizing,double,3,0.7,QD,0,0.1,0,0,\n"), std::string::npos) << norm;
}

TEST(Histograms, FrequenciesSumToOne) {
  ScratchDir dir("hist");
  RunConfig cfg = small_config(dir.path());
  cfg.ensemble_count = 200;
  const auto hists = initial_qc_histograms(cfg);
  ASSERT_EQ(hists.size(), 2u);
  for (const auto& h : hists) {
    double total = 0.0;
    for (double f : h.frequency) total += f;
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
  const auto files = emit_histograms(hists, dir.path());
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "hist_LN_r2.csv");
  EXPECT_EQ(slurp(files[0]).rfind("bin_lower,bin_upper,frequency\n", 0), 0u);
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(NMQC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodesDistinguishFailureKinds) {
  ScratchDir dir("cli");
  const fs::path log = dir.path() / "log.txt";
  EXPECT_EQ(run_cli("show-config --rank 3", log), 0);
  EXPECT_NE(slurp(log).find("rank = 3"), std::string::npos);
  EXPECT_EQ(run_cli("show-config --rank 7", log), 2);
  EXPECT_EQ(run_cli("show-config --alpha_list 0.2 1.5", log), 2);
  EXPECT_EQ(run_cli("show-config --channel amplitude", log), 2);
  EXPECT_EQ(run_cli("--no-such-flag", log), 2);
  EXPECT_EQ(run_cli("tables " + (dir.path() / "missing.jsonl").string(), log), 3);
}

TEST(Cli, SweepWritesRecordsAndTablesFromAConfigFile) {
  ScratchDir dir("cli_sweep");
  const fs::path config = dir.path() / "run.toml";
  std::ofstream(config) << "channel = \"depolarizing\"\nsides = \"double\"\nrank = 1\nensemble_count = 20\n"
                        << "grid_steps = 50\nmeasures = [\"LN\"]\nalpha_list = [0.9]\n"
                        << "output_dir = \"" << (dir.path() / "out").string() << "\"\n";
  const fs::path log = dir.path() / "log.txt";
  ASSERT_EQ(run_cli("sweep --config " + config.string(), log), 0) << slurp(log);
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "records_depolarizing_double_r1.jsonl"));
  const std::string table = slurp(dir.path() / "out" / "mean_regeneration.csv");
  EXPECT_NE(table.find("depolarizing,double,1,0.9,LN,20,"), std::string::npos) << table;
  ASSERT_EQ(run_cli("tables --config " + config.string() + " --output_dir " + (dir.path() / "again").string() + " " +
                        (dir.path() / "out" / "records_depolarizing_double_r1.jsonl").string(),
                    log),
            0)
      << slurp(log);
  EXPECT_EQ(slurp(dir.path() / "again" / "mean_regeneration.csv"), table);
}

TEST(Cli, PropositionCheckPasses) {
  ScratchDir dir("cli_prop");
  const fs::path log = dir.path() / "log.txt";
  EXPECT_EQ(run_cli("verify-proposition --states 50", log), 0) << slurp(log);
}

}  // namespace
}  // namespace nmqc
