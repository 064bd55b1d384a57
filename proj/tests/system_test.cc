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

#include <map>
#include <string>

#include "secddr/ctrl/system.h"
#include "secddr/dram/geometry.h"
#include "secddr/schemes/scheme.h"
#include "secddr/stats/trace.h"

namespace secddr::ctrl {
namespace {

using schemes::SchemeId;
using stats::AccessKind;
using stats::TraceEvent;

SimConfig ConfigFor(SchemeId id, std::uint64_t seed = 3) {
  SimConfig c;
  c.scheme = id;
  c.seed = seed;
  return c;
}

crypto::Line Pattern(std::uint8_t v) {
  crypto::Line l;
  for (std::size_t i = 0; i < l.size(); ++i) {
    l[i] = static_cast<std::uint8_t>(v + i);
  }
  return l;
}

std::string Name(const ::testing::TestParamInfo<SchemeId>& info) {
  return std::string(schemes::SchemeName(info.param));
}

class EveryScheme : public ::testing::TestWithParam<SchemeId> {};

TEST_P(EveryScheme, WriteThenReadRoundTrips) {
  System sys(ConfigFor(GetParam()));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x1040, Pattern(9));
  const ReadCompletion r = sys.ReadLine(0x1040);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.plaintext, Pattern(9));
  EXPECT_TRUE(sys.CountersInSync());
}

TEST_P(EveryScheme, NeverWrittenLineReadsZero) {
  System sys(ConfigFor(GetParam()));
  ASSERT_TRUE(sys.Boot().ok);
  const ReadCompletion r = sys.ReadLine(0x7777000);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.plaintext, crypto::Line{});
}

// Mixed traffic over a small footprint so lines are rewritten and re-read;
// final memory must match a plain map of last-written payloads.
TEST_P(EveryScheme, MixedTraceMatchesReferenceModel) {
  SimConfig cfg = ConfigFor(GetParam(), 11);
  cfg.audit_timing = true;
  System sys(cfg);
  ASSERT_TRUE(sys.Boot().ok);

  stats::TraceSpec spec;
  spec.kind = stats::TraceKind::kMixed;
  spec.footprint_bytes = 1 << 20;
  spec.events = 20000;
  spec.read_fraction = 0.6;
  const auto trace = stats::GenerateTrace(spec, 5);

  std::map<std::uint64_t, crypto::Line> model;
  std::uint64_t seq = 0, reads = 0, mismatched_reads = 0;
  for (const TraceEvent& e : trace) {
    if (e.kind == AccessKind::kWrite) {
      model[e.address & ~63ull] = stats::PayloadFor(e.address, seq++);
    } else {
      ++reads;
    }
  }
  std::uint64_t failing = 0;
  sys.set_read_observer([&](const ReadCompletion& c) {
    if (c.verdict != Verdict::kPass) ++failing;
  });
  sys.Run(trace);

  const ControllerStats& st = sys.controller().stats();
  EXPECT_EQ(failing, 0u);
  EXPECT_EQ(st.verdict_pass, reads);
  EXPECT_EQ(st.demand_reads, reads);
  EXPECT_EQ(st.demand_writes, trace.size() - reads);
  EXPECT_EQ(st.ewcrc_alerts + st.channel_rejects + st.metadata_fails, 0u);
  EXPECT_TRUE(sys.CountersInSync());
  for (const auto& [addr, line] : model) {
    if (sys.PeekPlaintext(addr) != line) ++mismatched_reads;
  }
  EXPECT_EQ(mismatched_reads, 0u);
  ASSERT_NE(sys.auditor(), nullptr);
  EXPECT_TRUE(sys.auditor()->ok())
      << (sys.auditor()->violations().empty()
              ? ""
              : sys.auditor()->violations().front());
  EXPECT_EQ(sys.auditor()->audited_bus_cycles(),
            sys.channel().read_bus_cycles() + sys.channel().write_bus_cycles());
}

// Reads see the data of the most recent earlier write to the same line even
// when both sit in the queues together.
TEST_P(EveryScheme, ReadAfterWriteOrdering) {
  System sys(ConfigFor(GetParam()));
  ASSERT_TRUE(sys.Boot().ok);
  std::vector<crypto::Line> seen;
  sys.set_read_observer(
      [&](const ReadCompletion& c) { seen.push_back(c.plaintext); });
  sys.Submit(TraceEvent{AccessKind::kWrite, 0x4000, 0, false}, Pattern(1));
  sys.Submit(TraceEvent{AccessKind::kRead, 0x4000, 0, false});
  sys.Submit(TraceEvent{AccessKind::kWrite, 0x4000, 0, false}, Pattern(2));
  sys.Submit(TraceEvent{AccessKind::kRead, 0x4000, 0, false});
  sys.Drain();
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0], Pattern(1));
  EXPECT_EQ(seen[1], Pattern(2));
}

TEST_P(EveryScheme, PowerCycleClearsMemory) {
  System sys(ConfigFor(GetParam()));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x2000, Pattern(4));
  ASSERT_TRUE(sys.PowerCycle().ok);
  const ReadCompletion r = sys.ReadLine(0x2000);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.plaintext, crypto::Line{});
}

TEST_P(EveryScheme, SleepKeepsData) {
  System sys(ConfigFor(GetParam()));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x2000, Pattern(4));
  sys.Sleep();
  const ReadCompletion r = sys.ReadLine(0x2000);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.plaintext, Pattern(4));
  EXPECT_TRUE(sys.CountersInSync());
}

INSTANTIATE_TEST_SUITE_P(Schemes, EveryScheme,
                         ::testing::ValuesIn(schemes::kAllSchemes), Name);

// Cold walks: a full leaf-to-root path of metadata reads per demand read.
TEST(SystemTraffic, ColdMetadataReadsPerDemandRead) {
  const std::map<SchemeId, std::uint64_t> expected = {
      {SchemeId::kTree64, 4},     {SchemeId::kTree128, 3},
      {SchemeId::kMerkle8, 9},    {SchemeId::kEncryptCtr, 1},
      {SchemeId::kSecddrXts, 0},  {SchemeId::kEncryptXts, 0},
      {SchemeId::kSecddrCtr, 1}};
  stats::TraceSpec spec;
  spec.kind = stats::TraceKind::kUniform;
  spec.footprint_bytes = 16ull << 30;
  spec.events = 2000;
  const auto trace = stats::GenerateTrace(spec, 9);
  for (const auto& [id, per_read] : expected) {
    SimConfig cfg = ConfigFor(id);
    cfg.controller.metadata_cache_bytes = 0;
    System sys(cfg);
    ASSERT_TRUE(sys.Boot().ok);
    sys.Run(trace);
    const ControllerStats& st = sys.controller().stats();
    EXPECT_EQ(st.metadata_reads, per_read * st.demand_reads)
        << schemes::SchemeName(id);
    EXPECT_EQ(st.verdict_pass, st.demand_reads) << schemes::SchemeName(id);
  }
}

TEST(SystemTraffic, SecddrWriteBurstsAreBl10) {
  stats::TraceSpec spec;
  spec.kind = stats::TraceKind::kStream;
  spec.footprint_bytes = 1 << 20;
  spec.events = 4096;
  spec.read_fraction = 0.0;
  const auto trace = stats::GenerateTrace(spec, 1);
  auto write_bus = [&](SchemeId id) {
    System sys(ConfigFor(id));
    EXPECT_TRUE(sys.Boot().ok);
    sys.Run(trace);
    return sys.channel().write_bus_cycles();
  };
  EXPECT_EQ(write_bus(SchemeId::kSecddrXts) * 4,
            write_bus(SchemeId::kEncryptXts) * 5);
  EXPECT_EQ(write_bus(SchemeId::kEncryptXts), 4096u * 4);
}

TEST(SystemTraffic, StreamingCounterLinesMostlyHit) {
  SimConfig cfg = ConfigFor(SchemeId::kEncryptCtr);
  System sys(cfg);
  ASSERT_TRUE(sys.Boot().ok);
  stats::TraceSpec spec;
  spec.kind = stats::TraceKind::kStream;
  spec.footprint_bytes = 4 << 20;
  spec.events = 1 << 16;
  sys.Run(stats::GenerateTrace(spec, 1));
  const auto& cache = sys.controller().metadata_cache();
  const double hit_rate =
      double(cache.hits()) / double(cache.hits() + cache.misses());
  EXPECT_GE(hit_rate, 63.0 / 64.0);
}

TEST(SystemTraffic, RandomCounterLinesRarelyHit) {
  System sys(ConfigFor(SchemeId::kEncryptCtr));
  ASSERT_TRUE(sys.Boot().ok);
  stats::TraceSpec spec;
  spec.kind = stats::TraceKind::kUniform;
  spec.footprint_bytes = 4ull << 30;
  spec.events = 20000;
  sys.Run(stats::GenerateTrace(spec, 2));
  const auto& cache = sys.controller().metadata_cache();
  EXPECT_LT(double(cache.hits()) / double(cache.hits() + cache.misses()),
            0.01);
}

TEST(SystemTraffic, InvisimemRealRunsBusAt1200) {
  System sys(ConfigFor(SchemeId::kInvisimemReal));
  EXPECT_EQ(sys.timing().bus_mhz, 1200u);
  EXPECT_EQ(sys.timing().read_release_delay, 15u);
  System unreal(ConfigFor(SchemeId::kInvisimemUnreal));
  EXPECT_EQ(unreal.timing().bus_mhz, 1600u);
  EXPECT_EQ(unreal.timing().read_release_delay, 20u);
}

TEST(SystemTraffic, SameSeedSameCycles) {
  stats::TraceSpec spec;
  spec.kind = stats::TraceKind::kMixed;
  spec.footprint_bytes = 1ull << 30;
  spec.events = 5000;
  spec.read_fraction = 0.7;
  const auto trace = stats::GenerateTrace(spec, 4);
  auto run = [&] {
    System sys(ConfigFor(SchemeId::kTree64, 8));
    sys.Boot();
    sys.Run(trace);
    return sys.controller().stats().last_completion;
  };
  EXPECT_EQ(run(), run());
}

TEST(SystemLifecycle, SkippedClearAfterReplacementFails) {
  System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x3000, Pattern(5));
  ASSERT_TRUE(sys.ReplaceChips(/*clear_memory=*/false).ok);
  EXPECT_EQ(sys.ReadLine(0x3000).verdict, Verdict::kMacFail);
}

TEST(SystemLifecycle, ReplacementWithClearReadsZero) {
  System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x3000, Pattern(5));
  ASSERT_TRUE(sys.ReplaceChips().ok);
  const ReadCompletion r = sys.ReadLine(0x3000);
  EXPECT_EQ(r.verdict, Verdict::kPass);
  EXPECT_EQ(r.plaintext, crypto::Line{});
}

TEST(SystemLifecycle, ModuleRestoredAcrossSleepFails) {
  System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x3000, Pattern(5));
  sys.Sleep();
  const chip::ModuleImage old = sys.module().Snapshot();
  sys.WriteLine(0x3000, Pattern(6));
  sys.Sleep();
  sys.module().Restore(old);
  EXPECT_EQ(sys.ReadLine(0x3000).verdict, Verdict::kMacFail);
}

TEST(SystemLifecycle, MonotonicCountersMoveForward) {
  SimConfig cfg = ConfigFor(SchemeId::kSecddrXts);
  cfg.security.counter_init = CounterInit::kMonotonic;
  System sys(cfg);
  ASSERT_TRUE(sys.Boot().ok);
  const auto first = sys.host().counter(0).value;
  ASSERT_TRUE(sys.PowerCycle().ok);
  EXPECT_GT(sys.host().counter(0).value, first);
  EXPECT_TRUE(sys.CountersInSync());
}

TEST(SystemLifecycle, HaltOnFailureStopsTheRun) {
  SimConfig cfg = ConfigFor(SchemeId::kSecddrXts);
  cfg.controller.halt_on_failure = true;
  System sys(cfg);
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x3000, Pattern(5));
  sys.module().storage().Mutable(
      dram::DecodeAddress(0x3000, sys.geometry())).data[0] ^= 1;
  for (int i = 0; i < 8; ++i) {
    sys.Submit(TraceEvent{AccessKind::kRead, 0x3000, 0, false});
  }
  sys.Drain();
  EXPECT_TRUE(sys.controller().halted());
  EXPECT_LT(sys.controller().stats().verdict_mac_fail, 8u);
}

TEST(SystemConfig, NoDataBeforeBoot) {
  System sys(ConfigFor(SchemeId::kSecddrXts));
  EXPECT_THROW(
      sys.Submit(TraceEvent{AccessKind::kRead, 0, 0, false}),
      std::logic_error);
}

}  // namespace
}  // namespace secddr::ctrl
