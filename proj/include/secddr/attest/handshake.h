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

#ifndef SECDDR_ATTEST_HANDSHAKE_H_
#define SECDDR_ATTEST_HANDSHAKE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "secddr/attest/identity.h"
#include "secddr/chip/rank_logic.h"
#include "secddr/crypto/types.h"

namespace secddr::attest {

enum class AbortReason { kCertificate, kSignature, kFreshness };
const char* AbortReasonName(AbortReason r);

struct ProcessorHello {
  PublicKey ephemeral{};
};

struct ChipResponse {
  PublicKey ephemeral{};
  Certificate certificate;
  Signature signature{};
};

using TranscriptHash = std::array<std::uint8_t, 32>;

struct HandshakeTranscript {
  PublicKey processor_ephemeral{};
  PublicKey chip_ephemeral{};
  Signature chip_signature{};
  TranscriptHash hash{};
  crypto::SecretKey key;           // K_t as derived by the processor
  crypto::SecretKey chip_key;      // K_t as derived by the chip (for audit)
  crypto::TransactionCounter initial_counter;  // as sent by the processor
};

struct HandshakeResult {
  std::optional<HandshakeTranscript> transcript;
  std::optional<AbortReason> abort;
  std::string detail;

  bool ok() const { return transcript.has_value(); }
};

// Man-in-the-middle hooks on the handshake messages, which travel over the
// same untrusted channel as data.
class HandshakeInterposer {
 public:
  virtual ~HandshakeInterposer() = default;
  virtual void OnHello(ProcessorHello& hello) { (void)hello; }
  virtual void OnResponse(ChipResponse& response) { (void)response; }
  virtual void OnCounter(crypto::TransactionCounter& counter) {
    (void)counter;
  }
};

struct AttestPolicy {
  PublicKey ca_root{};
  std::set<std::uint64_t> revoked_serials;
  // Certificates entered out of band by the system integrator. When set,
  // the chip's certificate must match one of them byte for byte.
  std::vector<Certificate> pinned;
};

// Processor side of the per-rank authenticated key exchange. Remembers
// every chip ephemeral it has accepted so a replayed response is refused.
class ProcessorAttestor {
 public:
  ProcessorAttestor(AttestPolicy policy, std::uint64_t rng_seed);

  // Runs one handshake with `chip`. On success the chip holds the new epoch
  // (key plus the counter value it received) and the transcript carries the
  // processor's view. On abort nothing is installed anywhere.
  HandshakeResult Run(chip::KeyedRank& chip,
                      crypto::TransactionCounter initial_counter,
                      HandshakeInterposer* mitm = nullptr);

  const AttestPolicy& policy() const { return policy_; }

 private:
  AttestPolicy policy_;
  std::uint64_t rng_seed_;
  std::uint64_t runs_ = 0;
  std::set<PublicKey> seen_chip_ephemerals_;
};

// Bytes the chip signs: a label, both ephemerals and the certificate.
std::vector<std::uint8_t> TranscriptBytes(const PublicKey& processor_eph,
                                          const PublicKey& chip_eph,
                                          const Certificate& cert);

// Years (of 365 days) until a 64-bit counter wraps at the given rate.
double CounterLifetimeYears(double transactions_per_second = 1e9);

}  // namespace secddr::attest

#endif  // SECDDR_ATTEST_HANDSHAKE_H_
