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

#include <random>

#include "secddr/dram/auditor.h"
#include "secddr/dram/channel.h"
#include "secddr/dram/geometry.h"
#include "secddr/dram/storage.h"

namespace secddr::dram {
namespace {

constexpr std::uint64_t kGiB = 1ull << 30;

TEST(GeometryTest, DefaultCapacityIsSixteenGiB) {
  const Geometry g;
  EXPECT_EQ(g.capacity_bytes(), 16 * kGiB);
  EXPECT_EQ(g.data_lines(), 1ull << 28);
}

TEST(GeometryTest, DecodeZeroAndBounds) {
  const Geometry g;
  EXPECT_EQ(DecodeAddress(0, g), PhysicalAddress{});
  EXPECT_EQ(DecodeAddress(63, g), PhysicalAddress{});
  EXPECT_NO_THROW(DecodeAddress(16 * kGiB - 64, g));
  EXPECT_THROW(DecodeAddress(16 * kGiB, g), AddressError);
}

TEST(GeometryTest, EncodeDecodeRoundTrip) {
  const Geometry g;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100000; ++i) {
    const std::uint64_t a = (rng() % g.data_lines()) * 64;
    const PhysicalAddress p = DecodeAddress(a, g);
    ASSERT_TRUE(g.Contains(p));
    ASSERT_EQ(EncodeAddress(p, g), a);
  }
}

TEST(GeometryTest, SequentialLinesAlternateBankGroups) {
  const Geometry g;
  for (std::uint64_t i = 0; i < 8; ++i) {
    EXPECT_EQ(DecodeAddress(i * 64, g).bank_group, i % 4);
  }
  // after every bank group, the column advances within the same row
  EXPECT_EQ(DecodeAddress(4 * 64, g).column, 1u);
  EXPECT_EQ(DecodeAddress(4 * 64, g).row, 0u);
}

TEST(GeometryTest, MetadataRowsSitAboveData) {
  Geometry g;
  g.metadata_rows = 4;
  const PhysicalAddress m = MetadataAddress(0, g);
  EXPECT_EQ(m.row, g.rows);
  EXPECT_TRUE(IsMetadataAddress(m, g));
  EXPECT_FALSE(IsMetadataAddress(DecodeAddress(0, g), g));
  EXPECT_THROW(MetadataAddress(g.metadata_lines(), g), AddressError);
  EXPECT_THROW(EncodeAddress(m, g), AddressError);
  EXPECT_EQ(g.row_bits(), 17u);
}

TEST(GeometryTest, RejectsNonPowerOfTwo) {
  Geometry g;
  g.banks_per_group = 3;
  EXPECT_THROW(ValidateGeometry(g), std::invalid_argument);
}

class ChannelTest : public ::testing::Test {
 protected:
  Geometry g_;
  DdrTimingParams t_;
};

TEST_F(ChannelTest, RowHitReadBusWindow) {
  DramChannel ch(g_, t_);
  const PhysicalAddress a{};
  ch.Issue(Command::kActivate, a, 0);
  const IssueResult r = ch.Issue(Command::kRead, a, 0);
  EXPECT_EQ(r.issue, 22);
  ASSERT_TRUE(r.bus);
  EXPECT_EQ(r.bus->begin - r.issue, 22);
  EXPECT_EQ(r.bus->end - r.bus->begin, 4);
}

TEST_F(ChannelTest, RowMissFirstBeatAfterPrechargeActivateRead) {
  DramChannel ch(g_, t_);
  PhysicalAddress a{};
  ch.Issue(Command::kActivate, a, 0);
  const Cycle pre = ch.Issue(Command::kPrecharge, a, 0).issue;
  EXPECT_EQ(pre, 56);  // tRAS
  a.row = 9;
  ch.Issue(Command::kActivate, a, 0);
  const IssueResult r = ch.Issue(Command::kRead, a, 0);
  EXPECT_EQ(r.bus->begin - pre, 22 + 22 + 22);
}

TEST_F(ChannelTest, IllegalCommandsThrow) {
  DramChannel ch(g_, t_);
  PhysicalAddress a{};
  EXPECT_THROW(ch.Issue(Command::kRead, a, 0), IllegalCommand);
  EXPECT_THROW(ch.Issue(Command::kPrecharge, a, 0), IllegalCommand);
  ch.Issue(Command::kActivate, a, 0);
  EXPECT_THROW(ch.Issue(Command::kActivate, a, 0), IllegalCommand);
  a.row = 1;
  EXPECT_THROW(ch.Issue(Command::kWrite, a, 0), IllegalCommand);
}

TEST_F(ChannelTest, SameBankReadsSpacedByLongCcd) {
  DramChannel ch(g_, t_);
  TimingAuditor audit(g_, t_);
  ch.set_auditor(&audit);
  const PhysicalAddress a{};
  ch.Issue(Command::kActivate, a, 0);
  Cycle prev = kNever;
  for (int i = 0; i < 64; ++i) {
    PhysicalAddress c = a;
    c.column = static_cast<std::uint32_t>(i);
    const Cycle at = ch.Issue(Command::kRead, c, 0).issue;
    if (i > 0) {
      EXPECT_EQ(at - prev, 10);
    }
    prev = at;
  }
  EXPECT_TRUE(audit.ok());
}

TEST_F(ChannelTest, WriteBurstLengthTen) {
  t_.write_burst_cycles = 5;
  DramChannel ch(g_, t_);
  const PhysicalAddress a{};
  ch.Issue(Command::kActivate, a, 0);
  const IssueResult w = ch.Issue(Command::kWrite, a, 0);
  EXPECT_EQ(w.bus->begin - w.issue, 16);
  EXPECT_EQ(w.bus->end - w.bus->begin, 5);
  EXPECT_EQ(ch.write_bus_cycles(), 5u);
}

TEST_F(ChannelTest, WriteDataDelayShiftsBurst) {
  t_.write_data_delay = 8;
  DramChannel ch(g_, t_);
  const PhysicalAddress a{};
  ch.Issue(Command::kActivate, a, 0);
  const IssueResult w = ch.Issue(Command::kWrite, a, 0);
  EXPECT_EQ(w.bus->begin - w.issue, 16 + 8);
}

TEST_F(ChannelTest, CommitDelayHoldsRecoveryNotBus) {
  t_.write_commit_delay = 8;
  DramChannel ch(g_, t_);
  const PhysicalAddress a{};
  ch.Issue(Command::kActivate, a, 0);
  const IssueResult w = ch.Issue(Command::kWrite, a, 100);
  EXPECT_EQ(w.bus->begin - w.issue, 16);
  // tCWL + BL + commit + tWR
  EXPECT_EQ(ch.Earliest(Command::kPrecharge, a, 0), 100 + 16 + 4 + 8 + 24);
  // tCWL + BL + commit + tWTR_L
  EXPECT_EQ(ch.Earliest(Command::kRead, a, 0), 100 + 16 + 4 + 8 + 12);
}

TEST_F(ChannelTest, RandomLegalStreamPassesAudit) {
  DramChannel ch(g_, t_);
  TimingAuditor audit(g_, t_);
  ch.set_auditor(&audit);
  std::mt19937_64 rng(2);
  Cycle now = 0;
  std::uint64_t bursts = 0;
  for (int i = 0; i < 20000; ++i) {
    PhysicalAddress a = DecodeAddress((rng() % g_.data_lines()) * 64, g_);
    a.row &= 3;  // force frequent row hits and conflicts
    const auto& b = ch.bank(a);
    IssueResult r;
    if (!b.open_row) {
      r = ch.Issue(Command::kActivate, a, now);
    } else if (*b.open_row != a.row) {
      r = ch.Issue(Command::kPrecharge, a, now);
    } else {
      r = ch.Issue((rng() & 1) ? Command::kWrite : Command::kRead, a, now);
      ++bursts;
    }
    now = r.issue + static_cast<Cycle>(rng() % 3);
  }
  EXPECT_TRUE(audit.ok()) << (audit.violations().empty()
                                  ? ""
                                  : audit.violations().front());
  EXPECT_EQ(audit.audited_bus_cycles(),
            ch.read_bus_cycles() + ch.write_bus_cycles());
  EXPECT_EQ(ch.read_bus_cycles() + ch.write_bus_cycles(), 4 * bursts);
}

TEST_F(ChannelTest, AuditorFlagsViolations) {
  TimingAuditor audit(g_, t_);
  const PhysicalAddress a{};
  audit.Record(Command::kActivate, a, IssueResult{0, std::nullopt});
  audit.Record(Command::kRead, a, IssueResult{5, BusInterval{27, 31}});
  EXPECT_FALSE(audit.ok());
}

TEST(StorageTest, LastWriterWinsAndFill) {
  const Geometry g;
  DramStorage s(g);
  const PhysicalAddress a = DecodeAddress(4096, g);
  EXPECT_EQ(s.Read(a), SecureLine{});
  SecureLine l1, l2;
  l1.ecc_meta = 1;
  l2.ecc_meta = 2;
  s.Write(a, l1);
  s.Write(a, l2);
  EXPECT_EQ(s.Read(a), l2);

  s.Clear([](const PhysicalAddress& p) {
    SecureLine l;
    l.ecc_meta = p.Pack() + 7;
    return l;
  });
  EXPECT_EQ(s.Read(a).ecc_meta, a.Pack() + 7);
  EXPECT_EQ(s.materialized_lines(), 0u);
}

TEST(StorageTest, SnapshotRestoreIsExact) {
  const Geometry g;
  DramStorage s(g);
  const PhysicalAddress a = DecodeAddress(0, g);
  SecureLine l;
  l.data[0] = 1;
  s.Write(a, l);
  const StorageImage img = s.Snapshot();
  s.Mutable(a).data[0] = 2;
  s.Write(DecodeAddress(64, g), l);
  s.Restore(img);
  EXPECT_EQ(s.Read(a), l);
  EXPECT_EQ(s.materialized_lines(), 1u);
}

TEST(TimingTest, ValidateRejectsBadBurst) {
  DdrTimingParams t;
  t.write_burst_cycles = 6;
  EXPECT_THROW(ValidateTiming(t), std::invalid_argument);
  t.write_burst_cycles = 5;
  EXPECT_NO_THROW(ValidateTiming(t));
  t.tCL = 0;
  EXPECT_THROW(ValidateTiming(t), std::invalid_argument);
}

}  // namespace
}  // namespace secddr::dram
