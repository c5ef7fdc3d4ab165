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

#include "nmqc/records.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nmqc/errors.hpp"

namespace nmqc {

namespace {

using nlohmann::json;

json config_json(const RunConfig& cfg) {
  json measures = json::array();
  for (Measure m : cfg.measures) measures.push_back(std::string(to_string(m)));
  return json{{"channel", std::string(to_string(cfg.kind))},
              {"sides", std::string(to_string(cfg.sides))},
              {"rank", cfg.rank},
              {"ensemble_count", cfg.ensemble_count},
              {"master_seed", cfg.master_seed},
              {"grid_steps", cfg.grid_steps},
              {"zero_threshold", cfg.zero_threshold},
              {"measures", measures},
              {"alpha_list", cfg.alpha_list},
              {"theta_steps", cfg.optimizer.theta_steps},
              {"phi_steps", cfg.optimizer.phi_steps},
              {"refine_starts", cfg.optimizer.refine_starts},
              {"refine_tolerance", cfg.optimizer.tolerance},
              {"max_iterations", cfg.optimizer.max_iterations}};
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  cfg.kind = parse_channel_kind(j.at("channel").get<std::string>());
  cfg.sides = parse_sides(j.at("sides").get<std::string>());
  cfg.rank = j.at("rank").get<int>();
  cfg.ensemble_count = j.at("ensemble_count").get<std::uint64_t>();
  cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
  cfg.grid_steps = j.at("grid_steps").get<int>();
  cfg.zero_threshold = j.at("zero_threshold").get<double>();
  cfg.measures.clear();
  for (const auto& m : j.at("measures")) cfg.measures.push_back(parse_measure(m.get<std::string>()));
  cfg.alpha_list = j.at("alpha_list").get<std::vector<double>>();
  cfg.optimizer.theta_steps = j.at("theta_steps").get<int>();
  cfg.optimizer.phi_steps = j.at("phi_steps").get<int>();
  cfg.optimizer.refine_starts = j.at("refine_starts").get<int>();
  cfg.optimizer.tolerance = j.at("refine_tolerance").get<double>();
  cfg.optimizer.max_iterations = j.at("max_iterations").get<int>();
  return cfg;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string records_header_line(const RunConfig& cfg) {
  const json header{{"schema", std::string(kRecordSchema)},
                    {"version", kRecordSchemaVersion},
                    {"config", config_json(cfg)}};
  return header.dump();
}

std::string record_line(const StoredRecord& r) {
  const json line{{"index", r.event.index},
                  {"alpha", r.alpha},
                  {"measure", std::string(to_string(r.measure))},
                  {"initial_qc", r.event.initial_qc},
                  {"collapsed", r.event.collapsed},
                  {"p_c", optional_json(r.event.p_c)},
                  {"regenerated", r.event.regenerated},
                  {"p_reg", optional_json(r.event.p_reg)},
                  {"regeneration_count", r.event.regeneration_count}};
  return line.dump();
}

RecordFile parse_records(std::istream& in, const std::string& source_name) {
  RecordFile out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("schema", "") != kRecordSchema) throw IoError(source_name + ": not an nmqc record file");
        if (j.value("version", -1) != kRecordSchemaVersion) {
          throw IoError(source_name + ": unsupported record schema version");
        }
        out.config = config_from_json(j.at("config"));
        have_header = true;
        continue;
      }
      StoredRecord r;
      r.alpha = j.at("alpha").get<double>();
      r.measure = parse_measure(j.at("measure").get<std::string>());
      r.event.index = j.at("index").get<std::uint64_t>();
      r.event.initial_qc = j.at("initial_qc").get<double>();
      r.event.collapsed = j.at("collapsed").get<bool>();
      r.event.p_c = optional_from(j.at("p_c"));
      r.event.regenerated = j.at("regenerated").get<bool>();
      r.event.p_reg = optional_from(j.at("p_reg"));
      r.event.regeneration_count = j.at("regeneration_count").get<int>();
      out.records.push_back(r);
    }
  } catch (const json::exception& e) {
    std::ostringstream msg;
    msg << source_name << ":" << line_no << ": malformed record (" << e.what() << ")";
    throw IoError(msg.str());
  } catch (const ConfigError& e) {
    std::ostringstream msg;
    msg << source_name << ":" << line_no << ": " << e.what();
    throw IoError(msg.str());
  }
  if (!have_header) throw IoError(source_name + ": missing record header");
  return out;
}

RecordFile read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open record file " + path.string());
  return parse_records(in, path.string());
}

}  // namespace nmqc
