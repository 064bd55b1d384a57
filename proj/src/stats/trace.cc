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

#include "secddr/stats/trace.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace secddr::stats {
namespace {

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t ParseU64(std::string_view s, int base = 10) {
  std::uint64_t v = 0;
  if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) {
    s.remove_prefix(2);
  }
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw TraceError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::uint64_t SplitMix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t ParseSize(std::string_view text) {
  struct Suffix {
    std::string_view name;
    std::uint64_t scale;
  };
  static constexpr Suffix kSuffixes[] = {
      {"GiB", 1ull << 30}, {"MiB", 1ull << 20}, {"KiB", 1ull << 10},
      {"G", 1ull << 30},   {"M", 1ull << 20},   {"K", 1ull << 10},
      {"B", 1}};
  for (const auto& s : kSuffixes) {
    if (text.ends_with(s.name)) {
      return ParseU64(text.substr(0, text.size() - s.name.size())) * s.scale;
    }
  }
  return ParseU64(text);
}

TraceSpec ParseTraceSpec(std::string_view text) {
  const auto parts = Split(text, ':');
  if (parts.size() < 3 || parts.size() > 4) {
    throw TraceError("trace spec must be kind:footprint:events[:read_fraction]");
  }
  TraceSpec spec;
  if (parts[0] == "uniform") {
    spec.kind = TraceKind::kUniform;
  } else if (parts[0] == "stream") {
    spec.kind = TraceKind::kStream;
  } else if (parts[0] == "pointer_chase") {
    spec.kind = TraceKind::kPointerChase;
  } else if (parts[0] == "mixed") {
    spec.kind = TraceKind::kMixed;
    spec.read_fraction = 0.7;
  } else {
    throw TraceError("unknown trace kind '" + std::string(parts[0]) + "'");
  }
  spec.footprint_bytes = ParseSize(parts[1]);
  spec.events = ParseU64(parts[2]);
  if (parts.size() == 4) {
    const std::string rf(parts[3]);
    char* end = nullptr;
    spec.read_fraction = std::strtod(rf.c_str(), &end);
    if (end != rf.c_str() + rf.size() || !(spec.read_fraction >= 0.0) ||
        spec.read_fraction > 1.0) {
      throw TraceError("read fraction must be in [0, 1]");
    }
  }
  if (spec.footprint_bytes < 64) throw TraceError("footprint below one line");
  return spec;
}

std::string FormatTraceSpec(const TraceSpec& spec) {
  static constexpr const char* kNames[] = {"uniform", "stream",
                                           "pointer_chase", "mixed"};
  std::ostringstream os;
  os << kNames[static_cast<int>(spec.kind)] << ':' << spec.footprint_bytes
     << "B:" << spec.events << ':' << spec.read_fraction;
  return os.str();
}

std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("BoundedDraw: zero bound");
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

std::vector<TraceEvent> GenerateTrace(const TraceSpec& spec,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t lines = spec.footprint_bytes / 64;
  std::vector<TraceEvent> out(spec.events);

  for (std::uint64_t i = 0; i < spec.events; ++i) {
    TraceEvent& e = out[i];
    e.gap = spec.gap;
    switch (spec.kind) {
      case TraceKind::kStream:
        e.address = (i % lines) * 64;
        break;
      case TraceKind::kPointerChase:
        e.dependent = true;
        e.address = BoundedDraw(rng, lines) * 64;
        break;
      case TraceKind::kUniform:
      case TraceKind::kMixed:
        e.address = BoundedDraw(rng, lines) * 64;
        break;
    }
  }

  // Exact read count, positions shuffled.
  const auto reads = static_cast<std::uint64_t>(
      std::llround(spec.read_fraction * static_cast<double>(spec.events)));
  std::vector<AccessKind> kinds(spec.events, AccessKind::kWrite);
  std::fill_n(kinds.begin(), reads, AccessKind::kRead);
  for (std::uint64_t i = spec.events; i > 1; --i) {
    std::swap(kinds[i - 1], kinds[BoundedDraw(rng, i)]);
  }
  for (std::uint64_t i = 0; i < spec.events; ++i) out[i].kind = kinds[i];
  return out;
}

std::vector<TraceEvent> ReadTrace(std::istream& in) {
  std::vector<TraceEvent> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind, addr, gap;
    ls >> kind;
    if (kind.empty() || kind[0] == '#') continue;
    ls >> addr >> gap;
    TraceEvent e;
    if (kind == "R") {
      e.kind = AccessKind::kRead;
    } else if (kind == "W") {
      e.kind = AccessKind::kWrite;
    } else {
      throw TraceError("line " + std::to_string(lineno) +
                       ": expected R or W");
    }
    try {
      e.address = ParseU64(addr, 16);
      if (!gap.empty()) e.gap = ParseU64(gap);
    } catch (const TraceError& err) {
      throw TraceError("line " + std::to_string(lineno) + ": " + err.what());
    }
    std::string extra;
    if (ls >> extra) {
      throw TraceError("line " + std::to_string(lineno) +
                       ": trailing field '" + extra + "'");
    }
    out.push_back(e);
  }
  return out;
}

void WriteTrace(std::ostream& out, const std::vector<TraceEvent>& events) {
  char buf[64];
  for (const auto& e : events) {
    const char k = e.kind == AccessKind::kRead ? 'R' : 'W';
    if (e.gap != 0) {
      std::snprintf(buf, sizeof(buf), "%c 0x%08llx %llu\n", k,
                    static_cast<unsigned long long>(e.address),
                    static_cast<unsigned long long>(e.gap));
    } else {
      std::snprintf(buf, sizeof(buf), "%c 0x%08llx\n", k,
                    static_cast<unsigned long long>(e.address));
    }
    out << buf;
  }
}

crypto::Line PayloadFor(std::uint64_t address, std::uint64_t seq) {
  std::uint64_t state = address * 0x100000001b3ULL ^ (seq + 1);
  crypto::Line l;
  for (int i = 0; i < 8; ++i) crypto::StoreLe64(&l[8 * i], SplitMix(state));
  return l;
}

}  // namespace secddr::stats
