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

#ifndef SECDDR_ADVERSARY_EPISODES_H_
#define SECDDR_ADVERSARY_EPISODES_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "secddr/adversary/attack.h"
#include "secddr/adversary/ledger.h"
#include "secddr/ctrl/system.h"

namespace secddr::adversary {

struct EpisodeResult {
  std::optional<ActionKind> action;
  DetectionLedger ledger;
  // Every active injection happened and was detected.
  bool detected = false;
  std::uint64_t reads = 0;
  std::uint64_t failing_verdicts = 0;
  // Verdict of the first demand read completed after the second wake.
  std::optional<ctrl::Verdict> first_read_after_wake;
};

// One episode over `lines` distinct random lines: write all, read all,
// sleep and wake, write all, sleep and wake, read all. The attack (if any) is armed at a
// random point of the phase where it bites. `base.seed` is replaced by
// `seed`.
EpisodeResult RunEpisode(const ctrl::SimConfig& base,
                         std::optional<ActionKind> action, std::uint64_t seed,
                         unsigned lines = 16);

struct MatrixRow {
  ActionKind action = ActionKind::kDropWrite;
  unsigned episodes = 0;
  unsigned injected = 0;
  unsigned detected = 0;
  unsigned first_read_after_wake_failed = 0;
};

struct MatrixResult {
  std::vector<MatrixRow> rows;  // one per active variant
  DetectionLedger ledger;       // every episode's entries
  bool all_detected() const;
};

// `episodes` seeded episodes per active variant. Variants run on up to
// `threads` workers (0: one per variant); results do not depend on it.
MatrixResult RunAttackMatrix(const ctrl::SimConfig& base, std::uint64_t seed,
                             unsigned episodes = 1, unsigned lines = 16,
                             unsigned threads = 0);

struct RateEstimate {
  std::uint64_t trials = 0;
  std::uint64_t accepts = 0;
  double expected = 0;  // per-trial probability under the null model
  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(accepts) / trials;
  }
  // Binomial standard deviation of the rate under `expected`.
  double sigma() const;
  bool WithinSigmas(double k) const;
};

// Captures one read response per line and replays it on every later read
// of that line, through the full controller pipeline. Counts replayed
// responses that verified. Expected rate 2^-w at MAC width w.
RateEstimate ReplayFalseAccepts(const ctrl::SimConfig& base,
                                std::uint64_t attempts, std::uint64_t seed);

}  // namespace secddr::adversary

#endif  // SECDDR_ADVERSARY_EPISODES_H_
