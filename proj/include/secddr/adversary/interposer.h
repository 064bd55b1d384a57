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

#ifndef SECDDR_ADVERSARY_INTERPOSER_H_
#define SECDDR_ADVERSARY_INTERPOSER_H_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "secddr/adversary/attack.h"
#include "secddr/adversary/ledger.h"
#include "secddr/chip/module.h"
#include "secddr/dram/bus.h"

namespace secddr::adversary {

// Runs an AttackScript against one channel. Bus actions see and edit wire
// messages only. Module actions (bit flips, snapshots, substitution) reach
// the module's cells and, for a swapped module, the state its chips carried
// when it was frozen.
class ScriptedAdversary : public dram::BusInterposer {
 public:
  ScriptedAdversary(AttackScript script, std::uint64_t seed,
                    chip::DimmModule& module);

  // Adds a trigger after construction; it joins the script in order.
  void Arm(const Trigger& trigger);

  dram::Disposition OnCommand(dram::CommandMsg& msg,
                              const dram::BusContext& ctx) override;
  void OnReadData(const dram::CommandMsg& msg, dram::ReadBurst& burst,
                  const dram::BusContext& ctx) override;

  // Call after the system wakes from sleep and before traffic resumes.
  void OnWake(dram::Cycle now);

  DetectionLedger& ledger() { return ledger_; }
  const DetectionLedger& ledger() const { return ledger_; }

 private:
  struct Armed {
    Trigger trigger;
    std::uint64_t id = 0;
    bool fired = false;  // trigger condition met
    bool done = false;   // action applied (or given up)
    // ReplayBusTuple state.
    std::optional<dram::ReadBurst> recorded;
    std::optional<dram::PhysicalAddress> target;
  };

  bool Due(const Armed& a, const dram::BusContext& ctx) const;
  void ApplyModuleAction(Armed& a, dram::Cycle now);

  chip::DimmModule& module_;
  dram::Geometry geometry_;
  std::mt19937_64 rng_;
  std::vector<Armed> armed_;
  std::optional<chip::ModuleImage> snapshot_;
  // Module copy frozen for SubstituteModuleAcrossWake, and the armed slot
  // waiting for the next wake.
  std::optional<chip::ModuleImage> frozen_;
  std::optional<std::size_t> pending_substitution_;
  DetectionLedger ledger_;
};

}  // namespace secddr::adversary

#endif  // SECDDR_ADVERSARY_INTERPOSER_H_
