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

#ifndef SECDDR_ADVERSARY_LEDGER_H_
#define SECDDR_ADVERSARY_LEDGER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "secddr/adversary/attack.h"
#include "secddr/ctrl/controller.h"

namespace secddr::adversary {

struct LedgerEntry {
  std::uint64_t injection_id = 0;
  ActionKind action = ActionKind::kDropWrite;
  bool passive = false;
  // Bus cycles. Unset when the trigger never found a message to act on.
  std::optional<dram::Cycle> injected_at;
  std::optional<dram::Cycle> detected_at;
  std::optional<ctrl::DetectionKind> detection;
  // What the wire or the cells held before and after, for the record.
  std::string original;
  std::string modified;
};

// Append-only record of injections and the first detection that followed
// each of them.
class DetectionLedger {
 public:
  // Returns the injection id.
  std::uint64_t Open(ActionKind action);
  void MarkInjected(std::uint64_t id, dram::Cycle at, std::string original,
                    std::string modified);
  // Pairs every injected, still undetected entry with the earliest
  // detection at or after its injection.
  void Correlate(const std::vector<ctrl::DetectionEvent>& detections);
  void Append(const DetectionLedger& other);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t injected() const;
  std::size_t detected() const;
  // Injected, active and never detected.
  std::size_t undetected() const;

  nlohmann::ordered_json ToJson() const;

 private:
  std::vector<LedgerEntry> entries_;
};

}  // namespace secddr::adversary

#endif  // SECDDR_ADVERSARY_LEDGER_H_
