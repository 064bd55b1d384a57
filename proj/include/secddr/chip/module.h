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

#ifndef SECDDR_CHIP_MODULE_H_
#define SECDDR_CHIP_MODULE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "secddr/chip/rank_logic.h"
#include "secddr/dram/bus.h"
#include "secddr/dram/storage.h"

namespace secddr::chip {

// Everything a frozen module retains: cells, per-rank volatile logic state
// and the row buffers it believes open.
struct ModuleImage {
  dram::StorageImage storage;
  std::vector<std::optional<LogicState>> ranks;
  std::vector<std::optional<std::uint32_t>> open_rows;
};

// The memory module of one channel as seen from the wire. Column commands
// resolve their row from the module's own record of the last ACTIVATE, so a
// tampered ACTIVATE redirects later reads and writes.
class DimmModule {
 public:
  DimmModule(const dram::Geometry& geometry,
             std::vector<std::unique_ptr<RankLogic>> ranks);

  // ACTIVATE / PRECHARGE bookkeeping. Column commands go through Read/Write.
  void OnCommand(const dram::CommandMsg& msg);

  // Full coordinates of a column command, or nullopt if its bank is closed.
  std::optional<dram::PhysicalAddress> Resolve(
      const dram::CommandMsg& msg) const;

  WriteOutcome Write(const dram::CommandMsg& msg,
                     const dram::WriteBurst& burst);
  // nullopt when the bank is closed (nothing is driven on the bus).
  std::optional<dram::ReadBurst> Read(const dram::CommandMsg& msg);

  dram::DramStorage& storage() { return storage_; }
  const dram::DramStorage& storage() const { return storage_; }
  RankLogic& rank(std::uint32_t r) { return *ranks_.at(r); }
  std::uint32_t rank_count() const {
    return static_cast<std::uint32_t>(ranks_.size());
  }
  // Swaps the logic of one rank (e.g. a replaced ECC chip); cells stay.
  void ReplaceRank(std::uint32_t r, std::unique_ptr<RankLogic> logic);
  // nullptr for ranks without a keyed endpoint.
  KeyedRank* keyed_rank(std::uint32_t r);

  const std::vector<std::optional<std::uint32_t>>& open_rows() const {
    return open_rows_;
  }

  ModuleImage Snapshot() const;
  // With `include_rank_state` false the ranks keep their current volatile
  // state, modelling counters that do not survive a freeze.
  void Restore(const ModuleImage& image, bool include_rank_state = true);

  // Power loss or sleep: keys are dropped and row buffers close; cell
  // contents persist.
  void PowerDown();

 private:
  std::size_t BankSlot(const dram::PhysicalAddress& a) const;

  dram::Geometry geometry_;
  dram::DramStorage storage_;
  std::vector<std::unique_ptr<RankLogic>> ranks_;
  std::vector<std::optional<std::uint32_t>> open_rows_;
};

}  // namespace secddr::chip

#endif  // SECDDR_CHIP_MODULE_H_
