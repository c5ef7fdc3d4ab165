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
#include <string>
#include <string_view>
#include <vector>

namespace nmqc {

enum class Suite { Proposition, Channels, Measures, Determinism };

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view text);  // throws ConfigError
std::vector<Suite> all_suites();

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::uint64_t random_states = 1000;  // per rank for ensemble surveys
  std::uint64_t channel_states = 100;
  std::uint64_t oracle_states = 50;
  int workers = 0;
  std::filesystem::path scratch_dir = "nmqc_verify_scratch";
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  Suite suite = Suite::Proposition;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;  // single JSON object
};

SuiteReport run_suite(Suite suite, const VerifyOptions& options = {});

}  // namespace nmqc
