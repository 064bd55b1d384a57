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

#include <cmath>
#include <optional>

#include "secddr/attest/handshake.h"
#include "secddr/attest/identity.h"
#include "secddr/chip/ecc_chip.h"

namespace secddr::attest {
namespace {

class AttestTest : public ::testing::Test {
 protected:
  AttestTest()
      : ca_(CertificateAuthority::FromSeed(SeedFrom(1, "ca"))),
        rogue_ca_(CertificateAuthority::FromSeed(SeedFrom(2, "ca"))) {}

  chip::EccChip Chip(const CertificateAuthority& ca, std::uint64_t serial) {
    return chip::EccChip(0, MakeIdentity(ca, SeedFrom(serial, "ek"), "acme", serial),
                         dram::Geometry{}, crypto::MacWidth(64));
  }
  AttestPolicy Policy() const {
    AttestPolicy p;
    p.ca_root = ca_.root();
    return p;
  }

  CertificateAuthority ca_;
  CertificateAuthority rogue_ca_;
};

TEST_F(AttestTest, HonestHandshakeAgreesOnKeyAndCounter) {
  auto chip = Chip(ca_, 7);
  ProcessorAttestor proc(Policy(), 99);
  const HandshakeResult r = proc.Run(chip, crypto::TransactionCounter{1234});
  ASSERT_TRUE(r.ok()) << r.detail;
  EXPECT_EQ(r.transcript->key, r.transcript->chip_key);
  EXPECT_NE(r.transcript->key, crypto::SecretKey{});
  EXPECT_TRUE(chip.has_key());
  EXPECT_EQ(chip.counter().value, 1234u);
}

TEST_F(AttestTest, EpochsDifferAcrossRuns) {
  auto chip = Chip(ca_, 7);
  ProcessorAttestor proc(Policy(), 99);
  const auto a = proc.Run(chip, crypto::TransactionCounter{0});
  const auto b = proc.Run(chip, crypto::TransactionCounter{0});
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_NE(a.transcript->key, b.transcript->key);
  EXPECT_NE(a.transcript->hash, b.transcript->hash);
}

TEST_F(AttestTest, SameSeedSameTranscript) {
  auto c1 = Chip(ca_, 7);
  auto c2 = Chip(ca_, 7);
  ProcessorAttestor p1(Policy(), 5), p2(Policy(), 5);
  const auto a = p1.Run(c1, crypto::TransactionCounter{9});
  const auto b = p2.Run(c2, crypto::TransactionCounter{9});
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a.transcript->hash, b.transcript->hash);
  EXPECT_EQ(a.transcript->key, b.transcript->key);
  EXPECT_EQ(a.transcript->chip_signature, b.transcript->chip_signature);
}

struct SignatureTamper : HandshakeInterposer {
  void OnResponse(ChipResponse& r) override { r.signature[0] ^= 1; }
};
struct EphemeralSwap : HandshakeInterposer {
  void OnResponse(ChipResponse& r) override { r.ephemeral[3] ^= 0x40; }
};
struct HelloSwap : HandshakeInterposer {
  void OnHello(ProcessorHello& h) override { h.ephemeral[0] ^= 0x80; }
};

TEST_F(AttestTest, TamperedMessagesAbortOnSignature) {
  SignatureTamper sig;
  EphemeralSwap eph;
  HelloSwap hello;
  for (HandshakeInterposer* mitm :
       std::initializer_list<HandshakeInterposer*>{&sig, &eph, &hello}) {
    auto chip = Chip(ca_, 7);
    ProcessorAttestor proc(Policy(), 3);
    const auto r = proc.Run(chip, crypto::TransactionCounter{0}, mitm);
    ASSERT_FALSE(r.ok());
    EXPECT_EQ(*r.abort, AbortReason::kSignature);
    EXPECT_FALSE(chip.has_key());
  }
}

TEST_F(AttestTest, ForeignCertificateAborts) {
  auto chip = Chip(rogue_ca_, 7);
  ProcessorAttestor proc(Policy(), 3);
  const auto r = proc.Run(chip, crypto::TransactionCounter{0});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(*r.abort, AbortReason::kCertificate);
  EXPECT_FALSE(chip.has_key());
}

TEST_F(AttestTest, RevokedSerialAborts) {
  auto chip = Chip(ca_, 41);
  AttestPolicy p = Policy();
  p.revoked_serials = {41};
  ProcessorAttestor proc(p, 3);
  const auto r = proc.Run(chip, crypto::TransactionCounter{0});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(*r.abort, AbortReason::kCertificate);
}

TEST_F(AttestTest, PinningRefusesOtherGenuineChips) {
  auto pinned_chip = Chip(ca_, 1);
  auto other_chip = Chip(ca_, 2);
  AttestPolicy p = Policy();
  p.pinned = {pinned_chip.certificate()};
  ProcessorAttestor proc(p, 3);
  EXPECT_TRUE(proc.Run(pinned_chip, crypto::TransactionCounter{0}).ok());
  const auto r = proc.Run(other_chip, crypto::TransactionCounter{0});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(*r.abort, AbortReason::kCertificate);
}

// Records the first response and plays it back on the next handshake.
struct ResponseReplay : HandshakeInterposer {
  std::optional<ChipResponse> recorded;
  void OnResponse(ChipResponse& r) override {
    if (recorded) {
      r = *recorded;
    } else {
      recorded = r;
    }
  }
};

TEST_F(AttestTest, ReplayedResponseAbortsOnFreshness) {
  auto chip = Chip(ca_, 7);
  ProcessorAttestor proc(Policy(), 3);
  ResponseReplay mitm;
  ASSERT_TRUE(proc.Run(chip, crypto::TransactionCounter{0}, &mitm).ok());
  const auto r = proc.Run(chip, crypto::TransactionCounter{0}, &mitm);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(*r.abort, AbortReason::kFreshness);
}

struct CounterTamper : HandshakeInterposer {
  void OnCounter(crypto::TransactionCounter& c) override { c.value += 1; }
};

TEST_F(AttestTest, CounterTamperIsNotCaughtByTheHandshake) {
  auto chip = Chip(ca_, 7);
  ProcessorAttestor proc(Policy(), 3);
  CounterTamper mitm;
  const auto r = proc.Run(chip, crypto::TransactionCounter{100}, &mitm);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.transcript->initial_counter.value, 100u);
  EXPECT_EQ(chip.counter().value, 101u);
}

TEST(Identity, CertificatesVerifyUnderTheirCa) {
  const auto ca = CertificateAuthority::FromSeed(SeedFrom(11, "ca"));
  const auto id = MakeIdentity(ca, SeedFrom(3, "ek"), "acme", 3);
  EXPECT_TRUE(VerifySignature(ca.root(), id.certificate.SignedBytes(),
                              id.certificate.ca_signature));
  Certificate forged = id.certificate;
  forged.serial = 4;
  EXPECT_FALSE(VerifySignature(ca.root(), forged.SignedBytes(),
                               forged.ca_signature));
}

TEST(CounterLifetime, NanosecondRateLastsCenturies) {
  // 2^64 / 1e9 s, in 365-day years.
  const double oracle = 18446744073709551616.0 / 1e9 / 31536000.0;
  EXPECT_NEAR(CounterLifetimeYears(1e9), oracle, 1e-9);
  EXPECT_NEAR(CounterLifetimeYears(1e9), 584.9, 0.05);
  EXPECT_GT(CounterLifetimeYears(1e9), 500.0);
}

}  // namespace
}  // namespace secddr::attest
