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

#ifndef SECDDR_DRAM_CHANNEL_H_
#define SECDDR_DRAM_CHANNEL_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "secddr/dram/address.h"
#include "secddr/dram/timing.h"

namespace secddr::dram {

enum class Command { kActivate, kRead, kWrite, kPrecharge };

const char* CommandName(Command c);

class IllegalCommand : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct BusInterval {
  Cycle begin = 0;
  Cycle end = 0;  // exclusive
  friend bool operator==(const BusInterval&, const BusInterval&) = default;
};

struct IssueResult {
  Cycle issue = 0;
  std::optional<BusInterval> bus;
};

struct BankState {
  std::optional<std::uint32_t> open_row;
  Cycle last_activate = kNever;
  Cycle last_read = kNever;
  Cycle last_write = kNever;
  Cycle last_precharge = kNever;
};

class TimingAuditor;

// Timing model of one channel as seen by the controller: bank row buffers,
// command spacing and data-bus occupancy. Command issue is serialised on a
// single command bus (one command per cycle).
class DramChannel {
 public:
  DramChannel(const Geometry& geometry, const DdrTimingParams& timing);

  // Earliest cycle >= now at which `cmd` may issue. Throws IllegalCommand if
  // the bank state does not admit the command at all (READ/WRITE to a closed
  // or different row, ACTIVATE on an open bank, PRECHARGE on a closed bank).
  Cycle Earliest(Command cmd, const PhysicalAddress& addr, Cycle now) const;
  bool IsLegal(Command cmd, const PhysicalAddress& addr) const;
  IssueResult Issue(Command cmd, const PhysicalAddress& addr, Cycle now);

  const BankState& bank(const PhysicalAddress& addr) const;
  const Geometry& geometry() const { return geometry_; }
  const DdrTimingParams& timing() const { return timing_; }

  void set_auditor(TimingAuditor* auditor) { auditor_ = auditor; }

  std::uint64_t read_bus_cycles() const { return read_bus_cycles_; }
  std::uint64_t write_bus_cycles() const { return write_bus_cycles_; }
  std::uint64_t command_count(Command c) const {
    return command_counts_[static_cast<int>(c)];
  }
  Cycle last_bus_end() const { return bus_end_; }

 private:
  struct RankState {
    std::vector<Cycle> last_read_by_group;
    std::vector<Cycle> last_write_by_group;
  };

  std::size_t BankIndex(const PhysicalAddress& a) const;
  Cycle BusReady(std::uint32_t rank, bool is_write) const;

  Geometry geometry_;
  DdrTimingParams timing_;
  std::vector<BankState> banks_;
  std::vector<RankState> ranks_;
  Cycle last_command_ = kNever;
  Cycle bus_end_ = kNever;
  std::uint32_t bus_rank_ = 0;
  bool bus_write_ = false;
  std::uint64_t read_bus_cycles_ = 0;
  std::uint64_t write_bus_cycles_ = 0;
  std::uint64_t command_counts_[4] = {0, 0, 0, 0};
  TimingAuditor* auditor_ = nullptr;
};

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_CHANNEL_H_
