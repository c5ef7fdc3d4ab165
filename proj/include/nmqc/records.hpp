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

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "nmqc/run_config.hpp"
#include "nmqc/sweep.hpp"

namespace nmqc {

/// Per-state record files are JSON Lines: one header object carrying the
/// schema tag, version and the science fields of the run, then one object per
/// (state index, alpha, measure).
inline constexpr std::string_view kRecordSchema = "nmqc.records";
inline constexpr int kRecordSchemaVersion = 1;

struct StoredRecord {
  double alpha = 0.0;
  Measure measure = Measure::LogNegativity;
  EventRecord event;
};

struct RecordFile {
  RunConfig config;  // science fields and ensemble_count; execution fields default
  std::vector<StoredRecord> records;
};

std::string records_header_line(const RunConfig& cfg);
std::string record_line(const StoredRecord& record);

/// Throws IoError on malformed input or an unknown schema/version.
RecordFile parse_records(std::istream& in, const std::string& source_name);
RecordFile read_records(const std::filesystem::path& path);

}  // namespace nmqc
