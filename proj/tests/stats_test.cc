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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "secddr/ctrl/system.h"
#include "secddr/stats/report.h"
#include "secddr/stats/trace.h"

namespace secddr::stats {
namespace {

TEST(TraceSpec, ParsesAndFormats) {
  const TraceSpec s = ParseTraceSpec("mixed:4GiB:200000:0.25");
  EXPECT_EQ(s.kind, TraceKind::kMixed);
  EXPECT_EQ(s.footprint_bytes, 4ull << 30);
  EXPECT_EQ(s.events, 200000u);
  EXPECT_DOUBLE_EQ(s.read_fraction, 0.25);
  EXPECT_EQ(ParseTraceSpec(FormatTraceSpec(s)).footprint_bytes, s.footprint_bytes);
  EXPECT_DOUBLE_EQ(ParseTraceSpec("mixed:1MiB:10").read_fraction, 0.7);
  EXPECT_EQ(ParseSize("64"), 64u);
  EXPECT_EQ(ParseSize("3KiB"), 3072u);
  EXPECT_EQ(ParseSize("2MiB"), 2u << 20);
}

TEST(TraceSpec, RejectsMalformedText) {
  for (const char* bad : {"", "uniform", "uniform:4GiB", "zipf:4GiB:10",
                          "uniform:4XB:10", "uniform:4GiB:ten",
                          "uniform:4GiB:10:1.5"}) {
    EXPECT_THROW(ParseTraceSpec(bad), TraceError) << bad;
  }
}

TEST(GenerateTrace, DeterministicPerSeed) {
  const TraceSpec s = ParseTraceSpec("mixed:64MiB:5000:0.7");
  EXPECT_EQ(GenerateTrace(s, 4), GenerateTrace(s, 4));
  EXPECT_NE(GenerateTrace(s, 4), GenerateTrace(s, 5));
}

TEST(GenerateTrace, ReadFractionIsExact) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    TraceSpec s;
    s.kind = TraceKind::kUniform;
    s.footprint_bytes = 1 << 20;
    s.events = 1 + rng() % 3000;
    s.read_fraction = static_cast<double>(rng() % 1001) / 1000;
    const auto t = GenerateTrace(s, rng());
    const auto reads = std::count_if(t.begin(), t.end(), [](const TraceEvent& e) {
      return e.kind == AccessKind::kRead;
    });
    const double want = s.read_fraction * static_cast<double>(s.events);
    EXPECT_LE(std::abs(static_cast<double>(reads) - want), 1.0)
        << s.events << " " << s.read_fraction;
  }
}

TEST(GenerateTrace, AddressesStayInFootprintAndAligned) {
  for (const char* text : {"uniform:1MiB:4000", "pointer_chase:1MiB:4000",
                           "mixed:1MiB:4000"}) {
    for (const TraceEvent& e : GenerateTrace(ParseTraceSpec(text), 1)) {
      EXPECT_LT(e.address, 1u << 20);
      EXPECT_EQ(e.address % 64, 0u);
    }
  }
}

TEST(GenerateTrace, StreamWrapsAround) {
  const auto t = GenerateTrace(ParseTraceSpec("stream:4KiB:200"), 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t[i].address, (i % 64) * 64);
  }
}

TEST(GenerateTrace, PointerChaseIsDependent) {
  for (const TraceEvent& e :
       GenerateTrace(ParseTraceSpec("pointer_chase:1MiB:100"), 1)) {
    EXPECT_TRUE(e.dependent);
  }
}

TEST(TraceFile, RoundTrips) {
  TraceSpec s = ParseTraceSpec("mixed:16MiB:3000:0.6");
  s.gap = 7;
  const auto t = GenerateTrace(s, 3);
  std::stringstream io;
  WriteTrace(io, t);
  const auto back = ReadTrace(io);
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(back[i].kind, t[i].kind);
    EXPECT_EQ(back[i].address, t[i].address);
    EXPECT_EQ(back[i].gap, t[i].gap);
  }
}

TEST(TraceFile, SkipsCommentsAndRejectsGarbage) {
  std::istringstream ok("# header\n\nR 0x40\nW 0x80 3\n");
  const auto t = ReadTrace(ok);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1].kind, AccessKind::kWrite);
  EXPECT_EQ(t[1].address, 0x80u);
  EXPECT_EQ(t[1].gap, 3u);
  std::istringstream bad("X 0x40\n");
  EXPECT_THROW(ReadTrace(bad), TraceError);
}

TEST(BoundedDraw, CoversRangeAndStaysBelowBound) {
  std::mt19937_64 rng(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 5000; ++i) {
    const std::uint64_t v = BoundedDraw(rng, 37);
    ASSERT_LT(v, 37u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 37u);
}

TEST(Report, CycleConversionRoundsUp) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t bus = rng() % 100000000;
    const unsigned cpu = 1000 + static_cast<unsigned>(rng() % 4000);
    const unsigned mhz = 800 + static_cast<unsigned>(rng() % 1000);
    const std::uint64_t want = (bus * cpu + mhz - 1) / mhz;
    EXPECT_EQ(ToCpuCycles(bus, cpu, mhz), want);
  }
  EXPECT_EQ(ToCpuCycles(1, 3200, 1600), 2u);
  EXPECT_EQ(ToCpuCycles(1, 3200, 1200), 3u);
}

TEST(Report, PercentileIsNearestRank) {
  EXPECT_EQ(Percentile({}, 50), 0u);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::uint64_t> v(1 + rng() % 300);
    for (auto& x : v) x = rng() % 1000;
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {1.0, 50.0, 95.0, 99.0, 100.0}) {
      const auto rank = static_cast<std::size_t>(
          std::ceil(p / 100 * static_cast<double>(v.size())));
      EXPECT_EQ(Percentile(v, p), sorted[std::max<std::size_t>(rank, 1) - 1]);
    }
  }
}

TEST(Report, ConfigHashIsStableAndSensitive) {
  nlohmann::ordered_json a = {{"seed", 1}, {"scheme", {{"id", "tree64"}}}};
  nlohmann::ordered_json b = a;
  b["seed"] = 2;
  EXPECT_EQ(ConfigHash(a), ConfigHash(a));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
}

RunReport RunOnce(schemes::SchemeId id, std::uint64_t seed,
                  std::uint64_t cache_bytes,
                  const std::vector<TraceEvent>& trace) {
  ctrl::SimConfig c;
  c.scheme = id;
  c.seed = seed;
  c.controller.metadata_cache_bytes = cache_bytes;
  ctrl::System sys(c);
  EXPECT_TRUE(sys.Boot().ok);
  sys.Run(trace);
  return BuildReport(sys, {{"seed", seed}}, trace.size());
}

TEST(Report, SameSeedGivesIdenticalOutput) {
  const auto trace = GenerateTrace(ParseTraceSpec("mixed:8MiB:3000"), 6);
  const RunReport a = RunOnce(schemes::SchemeId::kTree64, 6, 131072, trace);
  const RunReport b = RunOnce(schemes::SchemeId::kTree64, 6, 131072, trace);
  EXPECT_EQ(ToJsonText(a), ToJsonText(b));
  EXPECT_EQ(CsvRow(a), CsvRow(b));
  EXPECT_EQ(a.scheme, "tree64");
  EXPECT_EQ(a.trace_events, 3000u);
  EXPECT_EQ(a.demand_reads + a.demand_writes, 3000u);
  EXPECT_EQ(a.verdict_pass, a.demand_reads);
  EXPECT_EQ(a.bus_busy_cycles, a.read_bus_cycles + a.write_bus_cycles);
  EXPECT_LE(a.read_latency_p50, a.read_latency_p95);
  EXPECT_LE(a.read_latency_p95, a.read_latency_p99);
}

TEST(Report, CsvColumnsMatchHeader) {
  const auto trace = GenerateTrace(ParseTraceSpec("uniform:1MiB:200"), 1);
  const RunReport r = RunOnce(schemes::SchemeId::kSecddrXts, 1, 131072, trace);
  const auto count = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  EXPECT_EQ(count(CsvHeader()), count(CsvRow(r)));
  const auto j = ToJson(r);
  EXPECT_EQ(j.begin().key(), "scheme");
  EXPECT_EQ(j["total_cycles"].get<std::uint64_t>(), r.total_cycles);
}

TEST(Report, ColdTree64ReadsFourMetadataLinesPerRead) {
  TraceSpec s = ParseTraceSpec("uniform:16GiB:500");
  const auto trace = GenerateTrace(s, 9);
  const RunReport r = RunOnce(schemes::SchemeId::kTree64, 9, 0, trace);
  EXPECT_EQ(r.demand_reads, 500u);
  EXPECT_EQ(r.metadata_reads, 4 * r.demand_reads);
  EXPECT_EQ(r.metadata_cache_hits, 0u);
}

}  // namespace
}  // namespace secddr::stats
