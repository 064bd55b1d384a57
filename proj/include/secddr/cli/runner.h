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

#ifndef SECDDR_CLI_RUNNER_H_
#define SECDDR_CLI_RUNNER_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "secddr/cli/config.h"

namespace secddr::cli {

// Process exit status.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // boot failed, unreadable input, or a verification
                        // failure with no attack injected
  kExitUndetected = 2,  // an injected attack went undetected
  kExitConfig = 3,      // configuration, trace or attack-script error
};

struct RunResult {
  int exit_code = kExitOk;
  std::string name;                 // "<scheme>_seed<seed>"
  nlohmann::ordered_json report;    // JSON report
  std::string csv_row;              // empty for attack-matrix runs
  std::string message;              // one-line summary or error
};

// Runs one validated configuration: attestation, then the trace (with the
// attack script, if any) or the attack matrix.
RunResult Execute(const nlohmann::ordered_json& config);

// Command-line entry point: `run` and `validate` subcommands.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace secddr::cli

#endif  // SECDDR_CLI_RUNNER_H_
