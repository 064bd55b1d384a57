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

#include "secddr/dram/channel.h"

#include <algorithm>

#include "secddr/dram/auditor.h"

namespace secddr::dram {

const char* CommandName(Command c) {
  switch (c) {
    case Command::kActivate:
      return "ACT";
    case Command::kRead:
      return "RD";
    case Command::kWrite:
      return "WR";
    case Command::kPrecharge:
      return "PRE";
  }
  return "?";
}

void ValidateTiming(const DdrTimingParams& t) {
  const std::uint32_t required[] = {t.tCL,  t.tCCDS, t.tCCDL, t.tCWL,
                                    t.tWTRS, t.tWTRL, t.tRP,  t.tRCD,
                                    t.tRAS, t.bus_mhz, t.read_burst_cycles,
                                    t.write_burst_cycles};
  for (std::uint32_t v : required) {
    if (v == 0) throw std::invalid_argument("timing parameters must be > 0");
  }
  if (t.write_burst_cycles != 4 && t.write_burst_cycles != 5) {
    throw std::invalid_argument("write_burst_cycles must be 4 (BL8) or 5 (BL10)");
  }
}

DramChannel::DramChannel(const Geometry& geometry,
                         const DdrTimingParams& timing)
    : geometry_(geometry),
      timing_(timing),
      banks_(std::size_t{geometry.channels} * geometry.ranks *
             geometry.banks_per_rank()),
      ranks_(std::size_t{geometry.channels} * geometry.ranks) {
  ValidateTiming(timing_);
  for (auto& r : ranks_) {
    r.last_read_by_group.assign(geometry_.bank_groups, kNever);
    r.last_write_by_group.assign(geometry_.bank_groups, kNever);
  }
}

std::size_t DramChannel::BankIndex(const PhysicalAddress& a) const {
  return ((std::size_t{a.channel} * geometry_.ranks + a.rank) *
              geometry_.bank_groups +
          a.bank_group) *
             geometry_.banks_per_group +
         a.bank;
}

const BankState& DramChannel::bank(const PhysicalAddress& addr) const {
  return banks_[BankIndex(addr)];
}

Cycle DramChannel::BusReady(std::uint32_t rank, bool is_write) const {
  if (bus_end_ == kNever) return kNever;
  const bool switch_penalty = rank != bus_rank_ || is_write != bus_write_;
  return bus_end_ + (switch_penalty ? timing_.tRTRS : 0);
}

bool DramChannel::IsLegal(Command cmd, const PhysicalAddress& addr) const {
  const BankState& b = bank(addr);
  switch (cmd) {
    case Command::kActivate:
      return !b.open_row.has_value();
    case Command::kPrecharge:
      return b.open_row.has_value();
    case Command::kRead:
    case Command::kWrite:
      return b.open_row.has_value() && *b.open_row == addr.row;
  }
  return false;
}

Cycle DramChannel::Earliest(Command cmd, const PhysicalAddress& addr,
                            Cycle now) const {
  if (!geometry_.Contains(addr)) {
    throw IllegalCommand("address outside geometry");
  }
  if (!IsLegal(cmd, addr)) {
    throw IllegalCommand(std::string(CommandName(cmd)) +
                         " not legal for bank state at " + addr.ToString());
  }
  const DdrTimingParams& t = timing_;
  const BankState& b = bank(addr);
  const RankState& r = ranks_[std::size_t{addr.channel} * geometry_.ranks +
                              addr.rank];
  Cycle at = std::max(now, last_command_ + 1);

  switch (cmd) {
    case Command::kActivate:
      at = std::max(at, b.last_precharge + Cycle{t.tRP});
      break;
    case Command::kPrecharge:
      at = std::max({at, b.last_activate + Cycle{t.tRAS},
                     b.last_read + Cycle{t.tRTP},
                     b.last_write + Cycle{t.write_latency()} +
                         t.write_burst_cycles + t.write_commit_delay + t.tWR});
      break;
    case Command::kRead: {
      at = std::max(at, b.last_activate + Cycle{t.tRCD});
      for (std::uint32_t g = 0; g < geometry_.bank_groups; ++g) {
        const bool same = g == addr.bank_group;
        at = std::max(at, r.last_read_by_group[g] +
                              Cycle{same ? t.tCCDL : t.tCCDS});
        at = std::max(at, r.last_write_by_group[g] +
                              Cycle{t.write_latency()} + t.write_burst_cycles +
                              t.write_commit_delay +
                              (same ? t.tWTRL : t.tWTRS));
      }
      at = std::max(at, BusReady(addr.rank, false) - Cycle{t.read_latency()});
      break;
    }
    case Command::kWrite: {
      at = std::max(at, b.last_activate + Cycle{t.tRCD});
      for (std::uint32_t g = 0; g < geometry_.bank_groups; ++g) {
        const bool same = g == addr.bank_group;
        at = std::max(at, r.last_write_by_group[g] +
                              Cycle{same ? t.tCCDL : t.tCCDS});
      }
      at = std::max(at, BusReady(addr.rank, true) - Cycle{t.write_latency()});
      break;
    }
  }
  return at;
}

IssueResult DramChannel::Issue(Command cmd, const PhysicalAddress& addr,
                               Cycle now) {
  const Cycle at = Earliest(cmd, addr, now);
  BankState& b = banks_[BankIndex(addr)];
  RankState& r =
      ranks_[std::size_t{addr.channel} * geometry_.ranks + addr.rank];
  IssueResult result{at, std::nullopt};

  switch (cmd) {
    case Command::kActivate:
      b.open_row = addr.row;
      b.last_activate = at;
      break;
    case Command::kPrecharge:
      b.open_row.reset();
      b.last_precharge = at;
      break;
    case Command::kRead: {
      b.last_read = at;
      r.last_read_by_group[addr.bank_group] = at;
      const Cycle begin = at + timing_.read_latency();
      result.bus = BusInterval{begin, begin + timing_.read_burst_cycles};
      read_bus_cycles_ += timing_.read_burst_cycles;
      break;
    }
    case Command::kWrite: {
      b.last_write = at;
      r.last_write_by_group[addr.bank_group] = at;
      const Cycle begin = at + timing_.write_latency();
      result.bus = BusInterval{begin, begin + timing_.write_burst_cycles};
      write_bus_cycles_ += timing_.write_burst_cycles;
      break;
    }
  }
  if (result.bus) {
    bus_end_ = result.bus->end;
    bus_rank_ = addr.rank;
    bus_write_ = cmd == Command::kWrite;
  }
  last_command_ = at;
  ++command_counts_[static_cast<int>(cmd)];
  if (auditor_ != nullptr) auditor_->Record(cmd, addr, result);
  return result;
}

}  // namespace secddr::dram
