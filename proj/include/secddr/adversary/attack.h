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

#ifndef SECDDR_ADVERSARY_ATTACK_H_
#define SECDDR_ADVERSARY_ATTACK_H_

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace secddr::adversary {

enum class ActionKind {
  kReplayBusTuple,
  kCorruptActivateRow,
  kCorruptColumn,
  kDropWrite,
  kConvertWriteToRead,
  kFlipStoredBits,
  kSnapshotModule,
  kRestoreModule,
  kSubstituteModuleAcrossWake,
};

// Variants that change what the processor observes. SnapshotModule only
// records.
inline constexpr std::array<ActionKind, 8> kActiveActions = {
    ActionKind::kReplayBusTuple,     ActionKind::kCorruptActivateRow,
    ActionKind::kCorruptColumn,      ActionKind::kDropWrite,
    ActionKind::kConvertWriteToRead, ActionKind::kFlipStoredBits,
    ActionKind::kRestoreModule,      ActionKind::kSubstituteModuleAcrossWake,
};

std::string_view ActionName(ActionKind kind);
std::optional<ActionKind> ParseAction(std::string_view name);
bool IsPassive(ActionKind kind);

// Bits of one stored line: 512 data bits followed by the 64-bit ECC lane.
inline constexpr unsigned kStoredLineBits = 576;
inline constexpr unsigned kMaxFlips = 10;

struct AttackAction {
  ActionKind kind = ActionKind::kDropWrite;
  // ReplayBusTuple: line to replay (first read seen when unset).
  // FlipStoredBits: line to corrupt (required).
  std::optional<std::uint64_t> address;
  std::optional<std::uint32_t> new_row;     // CorruptActivateRow
  std::optional<std::uint32_t> new_column;  // CorruptColumn
  std::vector<unsigned> bits;               // FlipStoredBits, < 576 each
};

enum class TriggerBasis { kTransaction, kCycle };

// Fires once, at the first bus message with transaction index (or bus
// cycle) at or past `at`. Bus-level actions then apply to the first
// message they can act on.
struct Trigger {
  TriggerBasis basis = TriggerBasis::kTransaction;
  std::uint64_t at = 0;
  AttackAction action;
};

struct AttackScript {
  std::vector<Trigger> triggers;
};

class ScriptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"triggers": [{"transaction": 12, "action": "DropWrite"},
//               {"cycle": 900, "action": "FlipStoredBits",
//                "address": "0x1040", "bits": [3, 517]}]}
// Addresses may be numbers or hex strings. Errors name the offending
// JSON pointer.
AttackScript ParseAttackScript(const nlohmann::json& doc);
AttackScript LoadAttackScript(const std::string& path);
nlohmann::json ToJson(const AttackScript& script);

}  // namespace secddr::adversary

#endif  // SECDDR_ADVERSARY_ATTACK_H_
