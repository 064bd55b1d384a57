// Copyright 2026 The secddr-sim Authors
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

#ifndef SECDDR_CLI_CONFIG_H_
#define SECDDR_CLI_CONFIG_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "secddr/ctrl/system.h"
#include "secddr/stats/trace.h"

namespace secddr::cli {

struct ConfigIssue {
  std::string pointer;  // JSON pointer of the offending field
  std::string message;
};

struct Validation {
  std::optional<nlohmann::ordered_json> config;  // set when valid
  std::vector<ConfigIssue> errors;
  bool ok() const { return config.has_value(); }
};

// Sections: seed, scheme, geometry, timing, controller, security, trace,
// attack. Missing fields take the baseline defaults (DDR4-3200 at
// 1600 MHz, 64-entry queues, 128 KiB metadata cache, 40-cycle crypto);
// a few depend on the scheme.
Validation ValidateConfig(const nlohmann::json& input);
Validation ValidateConfigText(std::string_view bytes);

// SECMEM_<SECTION>__<FIELD>=value sets /<section>/<field>; SECMEM_SEED
// sets /seed. Values are read as JSON when they parse, else as strings.
// Unknown sections are reported as issues.
std::vector<ConfigIssue> ApplyEnvOverrides(
    nlohmann::json& config, const std::map<std::string, std::string>& env);
std::map<std::string, std::string> SecmemEnvironment();

// Sets `/section/field` (or `/field`), creating the section.
void SetField(nlohmann::json& config, std::string_view pointer,
              nlohmann::json value);

struct RunSpec {
  ctrl::SimConfig sim;
  stats::TraceSpec trace;
  std::string trace_file;  // overrides `trace` when non-empty
  std::string attack;      // "", "matrix" or a script path
  unsigned attack_episodes = 1;
};

// Only for validated configs.
RunSpec ToRunSpec(const nlohmann::ordered_json& config);

std::string FormatIssues(const std::vector<ConfigIssue>& issues);

}  // namespace secddr::cli

#endif  // SECDDR_CLI_CONFIG_H_
