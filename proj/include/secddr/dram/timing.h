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

#ifndef SECDDR_DRAM_TIMING_H_
#define SECDDR_DRAM_TIMING_H_

#include <cstdint>
#include <limits>

namespace secddr::dram {

// Controller clock cycles at bus_mhz.
using Cycle = std::int64_t;
inline constexpr Cycle kNever = std::numeric_limits<Cycle>::min() / 4;

// DDR4-3200 defaults. One cycle is one controller clock; a BL8 burst takes
// four cycles and BL10 five.
struct DdrTimingParams {
  std::uint32_t tCL = 22;
  std::uint32_t tCCDS = 4;
  std::uint32_t tCCDL = 10;
  std::uint32_t tCWL = 16;
  std::uint32_t tWTRS = 4;
  std::uint32_t tWTRL = 12;
  std::uint32_t tRP = 22;
  std::uint32_t tRCD = 22;
  std::uint32_t tRAS = 56;
  std::uint32_t bus_mhz = 1600;
  std::uint32_t read_burst_cycles = 4;
  std::uint32_t write_burst_cycles = 4;

  // Not part of the headline parameter set; typical DDR4-3200 values.
  std::uint32_t tRTP = 12;
  std::uint32_t tWR = 24;
  std::uint32_t tRTRS = 2;  // bus bubble on rank or direction switch

  // Module-side processing imposed by a protection scheme.
  std::uint32_t write_data_delay = 0;    // between WR and first data beat
  std::uint32_t read_release_delay = 0;  // added before read data leaves
  // After the last write beat, before the data is committed; delays write
  // recovery and write-to-read turnaround, not the bus.
  std::uint32_t write_commit_delay = 0;

  std::uint32_t read_latency() const { return tCL + read_release_delay; }
  std::uint32_t write_latency() const { return tCWL + write_data_delay; }
};

// Throws std::invalid_argument when a parameter is zero or the write burst is
// neither BL8 (4) nor BL10 (5).
void ValidateTiming(const DdrTimingParams& t);

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_TIMING_H_
