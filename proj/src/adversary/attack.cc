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

#include "secddr/adversary/attack.h"

#include <fstream>
#include <string>

namespace secddr::adversary {
namespace {

constexpr std::array<std::string_view, 9> kNames = {
    "ReplayBusTuple",     "CorruptActivateRow", "CorruptColumn",
    "DropWrite",          "ConvertWriteToRead", "FlipStoredBits",
    "SnapshotModule",     "RestoreModule",      "SubstituteModuleAcrossWake",
};

[[noreturn]] void Fail(const std::string& pointer, const std::string& what) {
  throw ScriptError(pointer + ": " + what);
}

std::uint64_t ReadU64(const nlohmann::json& v, const std::string& pointer) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) Fail(pointer, "must not be negative");
    return v.get<std::uint64_t>();
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t used = 0;
      const std::uint64_t x = std::stoull(s, &used, 0);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
    Fail(pointer, "not an unsigned integer: \"" + s + "\"");
  }
  Fail(pointer, "expected an unsigned integer");
}

std::uint32_t ReadU32(const nlohmann::json& v, const std::string& pointer) {
  const std::uint64_t x = ReadU64(v, pointer);
  if (x > 0xffffffffu) Fail(pointer, "out of range");
  return static_cast<std::uint32_t>(x);
}

}  // namespace

std::string_view ActionName(ActionKind kind) {
  return kNames[static_cast<std::size_t>(kind)];
}

std::optional<ActionKind> ParseAction(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<ActionKind>(i);
  }
  return std::nullopt;
}

bool IsPassive(ActionKind kind) { return kind == ActionKind::kSnapshotModule; }

AttackScript ParseAttackScript(const nlohmann::json& doc) {
  if (!doc.is_object()) Fail("", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "triggers") Fail("/" + key, "unknown field");
  }
  if (!doc.contains("triggers") || !doc["triggers"].is_array()) {
    Fail("/triggers", "expected an array");
  }
  AttackScript script;
  const auto& list = doc["triggers"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string base = "/triggers/" + std::to_string(i);
    const auto& t = list[i];
    if (!t.is_object()) Fail(base, "expected an object");
    Trigger trig;
    const bool has_txn = t.contains("transaction");
    const bool has_cycle = t.contains("cycle");
    if (has_txn == has_cycle) {
      Fail(base, "exactly one of \"transaction\" and \"cycle\" is required");
    }
    if (has_txn) {
      trig.basis = TriggerBasis::kTransaction;
      trig.at = ReadU64(t["transaction"], base + "/transaction");
    } else {
      trig.basis = TriggerBasis::kCycle;
      trig.at = ReadU64(t["cycle"], base + "/cycle");
    }
    if (!t.contains("action") || !t["action"].is_string()) {
      Fail(base + "/action", "expected an action name");
    }
    const auto kind = ParseAction(t["action"].get<std::string>());
    if (!kind) {
      Fail(base + "/action",
           "unknown action \"" + t["action"].get<std::string>() + "\"");
    }
    AttackAction& a = trig.action;
    a.kind = *kind;
    for (const auto& [key, value] : t.items()) {
      const std::string p = base + "/" + key;
      if (key == "transaction" || key == "cycle" || key == "action") continue;
      if (key == "address") {
        a.address = ReadU64(value, p);
      } else if (key == "row") {
        a.new_row = ReadU32(value, p);
      } else if (key == "column") {
        a.new_column = ReadU32(value, p);
      } else if (key == "bits") {
        if (!value.is_array()) Fail(p, "expected an array");
        for (std::size_t j = 0; j < value.size(); ++j) {
          const std::uint32_t b = ReadU32(value[j], p + "/" + std::to_string(j));
          if (b >= kStoredLineBits) Fail(p + "/" + std::to_string(j), "bit index past 575");
          a.bits.push_back(b);
        }
      } else {
        Fail(p, "unknown field");
      }
    }
    if (a.kind == ActionKind::kFlipStoredBits) {
      if (!a.address) Fail(base + "/address", "FlipStoredBits needs an address");
      if (a.bits.size() > kMaxFlips) Fail(base + "/bits", "at most 10 bits");
    }
    script.triggers.push_back(std::move(trig));
  }
  return script;
}

AttackScript LoadAttackScript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScriptError(path + ": cannot open");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScriptError(path + ": " + e.what());
  }
  return ParseAttackScript(doc);
}

nlohmann::json ToJson(const AttackScript& script) {
  nlohmann::json list = nlohmann::json::array();
  for (const Trigger& t : script.triggers) {
    nlohmann::json j;
    j[t.basis == TriggerBasis::kTransaction ? "transaction" : "cycle"] = t.at;
    j["action"] = std::string(ActionName(t.action.kind));
    if (t.action.address) j["address"] = *t.action.address;
    if (t.action.new_row) j["row"] = *t.action.new_row;
    if (t.action.new_column) j["column"] = *t.action.new_column;
    if (!t.action.bits.empty()) j["bits"] = t.action.bits;
    list.push_back(std::move(j));
  }
  return nlohmann::json{{"triggers", std::move(list)}};
}

}  // namespace secddr::adversary
