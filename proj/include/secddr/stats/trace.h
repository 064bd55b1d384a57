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

#ifndef SECDDR_STATS_TRACE_H_
#define SECDDR_STATS_TRACE_H_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "secddr/crypto/types.h"

namespace secddr::stats {

enum class AccessKind : std::uint8_t { kRead, kWrite };

struct TraceEvent {
  AccessKind kind = AccessKind::kRead;
  std::uint64_t address = 0;
  // Processor cycles after the previous event's issue before this one may
  // issue.
  std::uint64_t gap = 0;
  // Issue only once every earlier read has completed (pointer chasing).
  bool dependent = false;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

enum class TraceKind { kUniform, kStream, kPointerChase, kMixed };

struct TraceSpec {
  TraceKind kind = TraceKind::kUniform;
  std::uint64_t footprint_bytes = 0;
  std::uint64_t events = 0;
  double read_fraction = 1.0;
  std::uint64_t gap = 0;
};

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "kind:footprint:events[:read_fraction]", e.g. "uniform:4GiB:100000" or
// "mixed:4GiB:200000:0.7". Footprints accept B, KiB, MiB, GiB suffixes.
TraceSpec ParseTraceSpec(std::string_view text);
std::string FormatTraceSpec(const TraceSpec& spec);
std::uint64_t ParseSize(std::string_view text);

// Portable generator: same (spec, seed) gives the same trace on every
// platform. Reads are exactly round(read_fraction * events).
std::vector<TraceEvent> GenerateTrace(const TraceSpec& spec,
                                      std::uint64_t seed);

// Text form, one event per line: "R 0x00001040" or "W 0x00001040 12".
// Blank lines and lines starting with '#' are skipped.
std::vector<TraceEvent> ReadTrace(std::istream& in);
void WriteTrace(std::ostream& out, const std::vector<TraceEvent>& events);

// Unbiased draw in [0, bound) from a 64-bit engine, independent of the
// standard library's distribution implementation.
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound);

// Deterministic plaintext for the `seq`-th write of a run to `address`.
crypto::Line PayloadFor(std::uint64_t address, std::uint64_t seq);

}  // namespace secddr::stats

#endif  // SECDDR_STATS_TRACE_H_
