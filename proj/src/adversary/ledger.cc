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

#include "secddr/adversary/ledger.h"

#include <algorithm>

namespace secddr::adversary {

std::uint64_t DetectionLedger::Open(ActionKind action) {
  LedgerEntry e;
  e.injection_id = entries_.size();
  e.action = action;
  e.passive = IsPassive(action);
  entries_.push_back(std::move(e));
  return entries_.back().injection_id;
}

void DetectionLedger::MarkInjected(std::uint64_t id, dram::Cycle at,
                                   std::string original,
                                   std::string modified) {
  LedgerEntry& e = entries_.at(id);
  e.injected_at = at;
  e.original = std::move(original);
  e.modified = std::move(modified);
}

void DetectionLedger::Correlate(
    const std::vector<ctrl::DetectionEvent>& detections) {
  for (LedgerEntry& e : entries_) {
    if (!e.injected_at || e.detected_at || e.passive) continue;
    const ctrl::DetectionEvent* best = nullptr;
    for (const auto& d : detections) {
      if (d.at < *e.injected_at) continue;
      if (best == nullptr || d.at < best->at) best = &d;
    }
    if (best != nullptr) {
      e.detected_at = best->at;
      e.detection = best->kind;
    }
  }
}

void DetectionLedger::Append(const DetectionLedger& other) {
  for (LedgerEntry e : other.entries_) {
    e.injection_id = entries_.size();
    entries_.push_back(std::move(e));
  }
}

std::size_t DetectionLedger::injected() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) {
        return e.injected_at.has_value() && !e.passive;
      }));
}

std::size_t DetectionLedger::detected() const {
  return static_cast<std::size_t>(std::count_if(
      entries_.begin(), entries_.end(),
      [](const auto& e) { return e.detected_at.has_value(); }));
}

std::size_t DetectionLedger::undetected() const {
  return injected() - detected();
}

nlohmann::ordered_json DetectionLedger::ToJson() const {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const LedgerEntry& e : entries_) {
    nlohmann::ordered_json j;
    j["injection_id"] = e.injection_id;
    j["action"] = std::string(ActionName(e.action));
    j["passive"] = e.passive;
    j["injected_tick"] = e.injected_at ? nlohmann::ordered_json(*e.injected_at)
                                       : nlohmann::ordered_json(nullptr);
    j["detected_tick"] = e.detected_at ? nlohmann::ordered_json(*e.detected_at)
                                       : nlohmann::ordered_json("NONE");
    j["detection"] = e.detection ? ctrl::DetectionKindName(*e.detection)
                                 : (e.passive ? "PASSIVE" : "NONE");
    if (!e.original.empty()) j["original"] = e.original;
    if (!e.modified.empty()) j["modified"] = e.modified;
    list.push_back(std::move(j));
  }
  return list;
}

}  // namespace secddr::adversary
