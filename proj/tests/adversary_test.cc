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
#include <string>
#include <tuple>

#include "secddr/adversary/attack.h"
#include "secddr/adversary/episodes.h"
#include "secddr/adversary/forgery.h"
#include "secddr/adversary/interposer.h"
#include "secddr/ctrl/system.h"
#include "secddr/dram/geometry.h"
#include "secddr/schemes/scheme.h"
#include "secddr/stats/trace.h"

namespace secddr::adversary {
namespace {

using ctrl::SimConfig;
using schemes::SchemeId;
using stats::AccessKind;
using stats::TraceEvent;

SimConfig ConfigFor(SchemeId id, unsigned mac_width = 64) {
  SimConfig c;
  c.scheme = id;
  c.security.mac_width = mac_width;
  return c;
}

AttackAction Act(ActionKind k) {
  AttackAction a;
  a.kind = k;
  return a;
}

// ---- script loading ----

TEST(AttackScript, ParsesBothTriggerBasesAndParameters) {
  const auto doc = nlohmann::json::parse(R"({"triggers": [
      {"transaction": 12, "action": "DropWrite"},
      {"cycle": 900, "action": "FlipStoredBits", "address": "0x1040",
       "bits": [3, 517]},
      {"transaction": 4, "action": "CorruptActivateRow", "row": 7}]})");
  const AttackScript s = ParseAttackScript(doc);
  ASSERT_EQ(s.triggers.size(), 3u);
  EXPECT_EQ(s.triggers[0].basis, TriggerBasis::kTransaction);
  EXPECT_EQ(s.triggers[0].at, 12u);
  EXPECT_EQ(s.triggers[1].basis, TriggerBasis::kCycle);
  EXPECT_EQ(s.triggers[1].action.address, 0x1040u);
  EXPECT_EQ(s.triggers[1].action.bits, (std::vector<unsigned>{3, 517}));
  EXPECT_EQ(s.triggers[2].action.new_row, 7u);
  EXPECT_EQ(ParseAttackScript(ToJson(s)).triggers.size(), 3u);
}

TEST(AttackScript, ErrorsNameTheJsonPointer) {
  const auto expect_error = [](const char* text, const std::string& where) {
    try {
      ParseAttackScript(nlohmann::json::parse(text));
      ADD_FAILURE() << "no error for " << text;
    } catch (const ScriptError& e) {
      EXPECT_EQ(std::string(e.what()).rfind(where, 0), 0u) << e.what();
    }
  };
  expect_error(R"({"triggers": [{"transaction": 1, "action": "Nope"}]})",
               "/triggers/0/action");
  expect_error(R"({"triggers": [{"action": "DropWrite"}]})", "/triggers/0");
  expect_error(
      R"({"triggers": [{"cycle": 1, "action": "FlipStoredBits",
          "address": 64, "bits": [576]}]})",
      "/triggers/0/bits/0");
  expect_error(R"({"triggerz": []})", "/triggerz");
}

TEST(AttackScript, ActionNamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(ActionKind::kSubstituteModuleAcrossWake); ++i) {
    const auto k = static_cast<ActionKind>(i);
    EXPECT_EQ(ParseAction(ActionName(k)), k);
  }
  EXPECT_FALSE(ParseAction("replay"));
}

// ---- interposer ----

TEST(ScriptedAdversary, TriggerFiresOnce) {
  ctrl::System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  AttackScript script;
  script.triggers.push_back(Trigger{TriggerBasis::kTransaction, 0,
                                    Act(ActionKind::kDropWrite)});
  ScriptedAdversary adv(script, 1, sys.module());
  sys.set_interposer(&adv);
  for (int i = 0; i < 8; ++i) {
    sys.Submit(TraceEvent{AccessKind::kWrite, 0x10000u * i, 0});
  }
  sys.Drain();
  ASSERT_EQ(adv.ledger().entries().size(), 1u);
  EXPECT_TRUE(adv.ledger().entries()[0].injected_at.has_value());
  // Exactly one write went missing: the host is two steps ahead on one rank.
  EXPECT_FALSE(sys.CountersInSync());
}

TEST(ScriptedAdversary, ActivateRowCorruptionIsRefusedByTheChip) {
  ctrl::System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  const crypto::Line before = stats::PayloadFor(0x40000, 99);
  sys.WriteLine(0x40000, before);

  AttackScript script;
  AttackAction act = Act(ActionKind::kCorruptActivateRow);
  act.new_row = 3;
  script.triggers.push_back(
      Trigger{TriggerBasis::kTransaction, sys.controller().column_transactions(), act});
  ScriptedAdversary adv(script, 1, sys.module());
  sys.set_interposer(&adv);
  sys.controller().CloseAllRows();
  sys.WriteLine(0x40000, stats::PayloadFor(0x40000, 100));

  adv.ledger().Correlate(sys.controller().detections());
  const LedgerEntry& e = adv.ledger().entries().at(0);
  ASSERT_TRUE(e.detection.has_value());
  EXPECT_EQ(*e.detection, ctrl::DetectionKind::kEwcrcAlert);
  // The retry went to the right row, so no stale copy is left behind.
  const ctrl::ReadCompletion r = sys.ReadLine(0x40000);
  EXPECT_EQ(r.verdict, ctrl::Verdict::kPass);
  EXPECT_EQ(r.plaintext, stats::PayloadFor(0x40000, 100));
  EXPECT_TRUE(sys.CountersInSync());
}

TEST(ScriptedAdversary, ReplayedResponseFailsVerification) {
  ctrl::System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  sys.WriteLine(0x2000, stats::PayloadFor(0x2000, 1));
  AttackScript script;
  AttackAction act = Act(ActionKind::kReplayBusTuple);
  act.address = 0x2000;
  script.triggers.push_back(Trigger{TriggerBasis::kTransaction, 0, act});
  ScriptedAdversary adv(script, 1, sys.module());
  sys.set_interposer(&adv);
  EXPECT_EQ(sys.ReadLine(0x2000).verdict, ctrl::Verdict::kPass);  // recorded
  EXPECT_EQ(sys.ReadLine(0x2000).verdict, ctrl::Verdict::kMacFail);
  EXPECT_EQ(sys.ReadLine(0x2000).verdict, ctrl::Verdict::kPass);   // fired once
}

// ---- episodes ----

TEST(Episode, NoAdversaryMeansEmptyLedgerAndAllPass) {
  for (SchemeId id : schemes::kAllSchemes) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const EpisodeResult r = RunEpisode(ConfigFor(id), std::nullopt, seed);
      EXPECT_TRUE(r.ledger.empty());
      EXPECT_EQ(r.failing_verdicts, 0u) << schemes::SchemeName(id);
      EXPECT_EQ(r.reads, 32u);
    }
  }
}

class SecddrVariant
    : public ::testing::TestWithParam<std::tuple<SchemeId, ActionKind>> {};

TEST_P(SecddrVariant, DetectedInEveryEpisode) {
  const auto [scheme, action] = GetParam();
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const EpisodeResult r = RunEpisode(ConfigFor(scheme), action, seed);
    ASSERT_TRUE(r.detected) << "seed " << seed << "\n"
                            << r.ledger.ToJson().dump(2);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Adversary, SecddrVariant,
    ::testing::Combine(::testing::Values(SchemeId::kSecddrXts,
                                         SchemeId::kSecddrCtr),
                       ::testing::ValuesIn(kActiveActions)),
    [](const auto& info) {
      return std::string(schemes::SchemeName(std::get<0>(info.param))) + "_" +
             std::string(ActionName(std::get<1>(info.param)));
    });

TEST(Episode, SubstitutedModuleFailsFirstReadAfterWake) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const EpisodeResult r = RunEpisode(ConfigFor(SchemeId::kSecddrXts),
                                       ActionKind::kSubstituteModuleAcrossWake,
                                       seed);
    ASSERT_TRUE(r.first_read_after_wake.has_value());
    EXPECT_EQ(*r.first_read_after_wake, ctrl::Verdict::kMacFail);
  }
}

// Encryption alone leaves replay and dropped writes unnoticed.
TEST(Episode, EncryptOnlyMissesReplayAndDrop) {
  for (ActionKind k : {ActionKind::kReplayBusTuple, ActionKind::kDropWrite}) {
    const EpisodeResult r = RunEpisode(ConfigFor(SchemeId::kEncryptXts), k, 5);
    EXPECT_EQ(r.ledger.injected(), 1u);
    EXPECT_EQ(r.ledger.undetected(), 1u) << ActionName(k);
  }
}

// The on-chip tree catches everything but a wake-time substitution needs
// the module to disagree with the tree, which it does.
TEST(Episode, TreeDetectsStoredTampering) {
  for (ActionKind k : {ActionKind::kReplayBusTuple, ActionKind::kDropWrite,
                       ActionKind::kFlipStoredBits,
                       ActionKind::kSubstituteModuleAcrossWake}) {
    const EpisodeResult r = RunEpisode(ConfigFor(SchemeId::kTree64), k, 5);
    EXPECT_TRUE(r.detected) << ActionName(k);
  }
}

TEST(Matrix, OneEpisodePerVariantAllDetected) {
  const MatrixResult m = RunAttackMatrix(ConfigFor(SchemeId::kSecddrCtr), 7);
  ASSERT_EQ(m.rows.size(), kActiveActions.size());
  EXPECT_TRUE(m.all_detected());
  EXPECT_EQ(m.ledger.undetected(), 0u);
  // Same seed, same ledger, regardless of worker count.
  const MatrixResult again =
      RunAttackMatrix(ConfigFor(SchemeId::kSecddrCtr), 7, 1, 16, 1);
  EXPECT_EQ(m.ledger.ToJson(), again.ledger.ToJson());
}

// ---- statistics ----

TEST(Statistics, TruncatedMacReplayAcceptsAboutOneIn256) {
  const RateEstimate est =
      ReplayFalseAccepts(ConfigFor(SchemeId::kSecddrXts, 8), 50000, 3);
  EXPECT_EQ(est.trials, 50000u);
  EXPECT_TRUE(est.WithinSigmas(3)) << est.rate();
  EXPECT_GT(est.accepts, 0u);
}

TEST(Statistics, FullWidthReplayNeverAccepts) {
  const RateEstimate est =
      ReplayFalseAccepts(ConfigFor(SchemeId::kSecddrXts, 64), 5000, 3);
  EXPECT_EQ(est.accepts, 0u);
}

TEST(Statistics, EwcrcRedirectionAcceptsAboutOneIn65536) {
  EwcrcForgeryBench bench(dram::Geometry{}, 11);
  const RateEstimate est = bench.Rate(1u << 21);
  EXPECT_TRUE(est.WithinSigmas(3)) << est.accepts;
}

TEST(Statistics, StoredBitFlipsNeverVerify) {
  ctrl::System sys(ConfigFor(SchemeId::kSecddrXts));
  ASSERT_TRUE(sys.Boot().ok);
  const dram::Geometry& g = sys.geometry();
  std::vector<std::uint64_t> addrs;
  for (std::uint64_t i = 0; i < 32; ++i) {
    addrs.push_back(i * 131 * dram::Geometry::kLineBytes);
    sys.WriteLine(addrs.back(), stats::PayloadFor(addrs.back(), i));
  }
  std::mt19937_64 rng(5);
  int false_accepts = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t a = addrs[stats::BoundedDraw(rng, addrs.size())];
    dram::SecureLine& line =
        sys.module().storage().Mutable(dram::DecodeAddress(a, g));
    const dram::SecureLine saved = line;
    const unsigned k = 1 + static_cast<unsigned>(stats::BoundedDraw(rng, 10));
    for (unsigned j = 0; j < k; ++j) {
      const auto b = static_cast<unsigned>(stats::BoundedDraw(rng, 576));
      if (b < 512) {
        line.data[b / 8] ^= static_cast<std::uint8_t>(1u << (b % 8));
      } else {
        line.ecc_meta ^= std::uint64_t{1} << (b - 512);
      }
    }
    const bool changed = !(line == saved);
    const ctrl::ReadCompletion r = sys.ReadLine(a);
    if (changed && r.verdict == ctrl::Verdict::kPass) ++false_accepts;
    sys.module().storage().Mutable(dram::DecodeAddress(a, g)) = saved;
  }
  EXPECT_EQ(false_accepts, 0);
}

}  // namespace
}  // namespace secddr::adversary
