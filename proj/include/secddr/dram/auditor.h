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

#ifndef SECDDR_DRAM_AUDITOR_H_
#define SECDDR_DRAM_AUDITOR_H_

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "secddr/dram/channel.h"

namespace secddr::dram {

// Online checker fed with every issued command. It re-derives legality from
// pairwise rules over recent history rather than from DramChannel's state, so
// a scheduling bug in the channel shows up as a violation here.
class TimingAuditor {
 public:
  TimingAuditor(const Geometry& geometry, const DdrTimingParams& timing);

  void Record(Command cmd, const PhysicalAddress& addr,
              const IssueResult& result);

  bool ok() const { return violations_.empty(); }
  const std::vector<std::string>& violations() const { return violations_; }
  std::uint64_t commands_checked() const { return checked_; }
  std::uint64_t audited_bus_cycles() const { return bus_cycles_; }

 private:
  struct Entry {
    Command cmd;
    PhysicalAddress addr;
    Cycle at;
    bool has_bus;
    BusInterval bus;
  };

  void Require(bool cond, const Entry& prev, const Entry& cur,
               const char* rule, Cycle need);

  Geometry geometry_;
  DdrTimingParams t_;
  std::deque<Entry> window_;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t,
                      std::uint32_t>,
           std::uint32_t>
      open_rows_;
  Cycle max_bus_end_ = kNever;
  std::vector<std::string> violations_;
  std::uint64_t checked_ = 0;
  std::uint64_t bus_cycles_ = 0;
};

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_AUDITOR_H_
