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

#include "secddr/dram/auditor.h"

#include <sstream>

namespace secddr::dram {
namespace {

constexpr Cycle kWindow = 512;
constexpr std::size_t kMaxViolations = 64;

bool SameBank(const PhysicalAddress& a, const PhysicalAddress& b) {
  return a.channel == b.channel && a.rank == b.rank &&
         a.bank_group == b.bank_group && a.bank == b.bank;
}

bool SameRank(const PhysicalAddress& a, const PhysicalAddress& b) {
  return a.channel == b.channel && a.rank == b.rank;
}

}  // namespace

TimingAuditor::TimingAuditor(const Geometry& geometry,
                             const DdrTimingParams& timing)
    : geometry_(geometry), t_(timing) {}

void TimingAuditor::Require(bool cond, const Entry& prev, const Entry& cur,
                            const char* rule, Cycle need) {
  if (cond || violations_.size() >= kMaxViolations) return;
  std::ostringstream os;
  os << rule << ": " << CommandName(prev.cmd) << "@" << prev.at << " -> "
     << CommandName(cur.cmd) << "@" << cur.at << " needs gap " << need
     << " at " << cur.addr.ToString();
  violations_.push_back(os.str());
}

void TimingAuditor::Record(Command cmd, const PhysicalAddress& addr,
                           const IssueResult& result) {
  ++checked_;
  Entry cur{cmd, addr, result.issue, result.bus.has_value(),
            result.bus.value_or(BusInterval{})};

  const auto key =
      std::make_tuple(addr.channel, addr.rank, addr.bank_group, addr.bank);
  auto open = open_rows_.find(key);
  auto flag = [&](const std::string& what) {
    if (violations_.size() < kMaxViolations) {
      violations_.push_back(what + " at " + addr.ToString());
    }
  };
  switch (cmd) {
    case Command::kActivate:
      if (open != open_rows_.end()) flag("ACT to open bank");
      open_rows_[key] = addr.row;
      break;
    case Command::kPrecharge:
      if (open == open_rows_.end()) flag("PRE to closed bank");
      open_rows_.erase(key);
      break;
    case Command::kRead:
    case Command::kWrite:
      if (open == open_rows_.end() || open->second != addr.row) {
        flag("column command without matching open row");
      }
      break;
  }

  const Cycle wl = Cycle{t_.tCWL} + t_.write_data_delay;
  const Cycle rl = Cycle{t_.tCL} + t_.read_release_delay;
  const Cycle wr_end = wl + t_.write_burst_cycles;

  for (const Entry& p : window_) {
    const Cycle gap = cur.at - p.at;
    Require(gap >= 1, p, cur, "command bus", 1);
    if (SameBank(p.addr, addr)) {
      if (p.cmd == Command::kActivate &&
          (cmd == Command::kRead || cmd == Command::kWrite)) {
        Require(gap >= t_.tRCD, p, cur, "tRCD", t_.tRCD);
      }
      if (p.cmd == Command::kActivate && cmd == Command::kPrecharge) {
        Require(gap >= t_.tRAS, p, cur, "tRAS", t_.tRAS);
      }
      if (p.cmd == Command::kPrecharge && cmd == Command::kActivate) {
        Require(gap >= t_.tRP, p, cur, "tRP", t_.tRP);
      }
      if (p.cmd == Command::kRead && cmd == Command::kPrecharge) {
        Require(gap >= t_.tRTP, p, cur, "tRTP", t_.tRTP);
      }
      if (p.cmd == Command::kWrite && cmd == Command::kPrecharge) {
        const Cycle need = wr_end + t_.write_commit_delay + t_.tWR;
        Require(gap >= need, p, cur, "tWR", need);
      }
    }
    if (SameRank(p.addr, addr)) {
      const bool same_group = p.addr.bank_group == addr.bank_group;
      if (p.cmd == cmd &&
          (cmd == Command::kRead || cmd == Command::kWrite)) {
        const Cycle need = same_group ? t_.tCCDL : t_.tCCDS;
        Require(gap >= need, p, cur, same_group ? "tCCDL" : "tCCDS", need);
      }
      if (p.cmd == Command::kWrite && cmd == Command::kRead) {
        const Cycle need = wr_end + t_.write_commit_delay +
                           (same_group ? t_.tWTRL : t_.tWTRS);
        Require(gap >= need, p, cur, same_group ? "tWTRL" : "tWTRS", need);
      }
    }
    if (p.has_bus && cur.has_bus) {
      const bool disjoint =
          cur.bus.begin >= p.bus.end || cur.bus.end <= p.bus.begin;
      Require(disjoint, p, cur, "data bus overlap", 0);
    }
  }

  if (cur.has_bus) {
    const Cycle expect = cmd == Command::kRead ? rl : wl;
    const Cycle len = cmd == Command::kRead ? t_.read_burst_cycles
                                            : t_.write_burst_cycles;
    if (cur.bus.begin - cur.at != expect || cur.bus.end - cur.bus.begin != len) {
      flag("burst placement");
    }
    if (cur.bus.begin < max_bus_end_) flag("data bus overlap (global)");
    max_bus_end_ = std::max(max_bus_end_, cur.bus.end);
    bus_cycles_ += static_cast<std::uint64_t>(cur.bus.end - cur.bus.begin);
  }

  window_.push_back(cur);
  while (!window_.empty() && window_.front().at < cur.at - kWindow) {
    window_.pop_front();
  }
}

}  // namespace secddr::dram
