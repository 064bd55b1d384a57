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

#include "secddr/attest/handshake.h"

#include <sodium.h>

#include <cmath>

namespace secddr::attest {
namespace {

struct Ephemeral {
  std::array<std::uint8_t, 32> secret{};
  PublicKey pub{};
};

Ephemeral MakeEphemeral(const Seed& seed) {
  Ephemeral e;
  e.secret = seed;
  crypto_scalarmult_base(e.pub.data(), e.secret.data());
  return e;
}

// Returns false when the peer value is degenerate.
bool DeriveKey(const Ephemeral& mine, const PublicKey& peer,
               const TranscriptHash& hash, crypto::SecretKey& out) {
  std::array<std::uint8_t, 32> shared;
  if (crypto_scalarmult(shared.data(), mine.secret.data(), peer.data()) != 0) {
    return false;
  }
  std::array<std::uint8_t, 64> input;
  std::copy(shared.begin(), shared.end(), input.begin());
  std::copy(hash.begin(), hash.end(), input.begin() + 32);
  std::array<std::uint8_t, crypto::SecretKey::kSize> key;
  crypto_generichash(key.data(), key.size(), input.data(), input.size(),
                     nullptr, 0);
  sodium_memzero(shared.data(), shared.size());
  out = crypto::SecretKey(key);
  return true;
}

TranscriptHash Hash(const std::vector<std::uint8_t>& bytes) {
  TranscriptHash h;
  crypto_generichash(h.data(), h.size(), bytes.data(), bytes.size(), nullptr,
                     0);
  return h;
}

HandshakeResult Abort(AbortReason r, std::string detail) {
  HandshakeResult out;
  out.abort = r;
  out.detail = std::move(detail);
  return out;
}

}  // namespace

const char* AbortReasonName(AbortReason r) {
  switch (r) {
    case AbortReason::kCertificate: return "cert";
    case AbortReason::kSignature: return "sig";
    case AbortReason::kFreshness: return "freshness";
  }
  return "?";
}

std::vector<std::uint8_t> TranscriptBytes(const PublicKey& processor_eph,
                                          const PublicKey& chip_eph,
                                          const Certificate& cert) {
  static constexpr char kLabel[] = "secddr-ake-v1";
  std::vector<std::uint8_t> out(kLabel, kLabel + sizeof(kLabel));
  out.insert(out.end(), processor_eph.begin(), processor_eph.end());
  out.insert(out.end(), chip_eph.begin(), chip_eph.end());
  const auto c = cert.SignedBytes();
  out.insert(out.end(), c.begin(), c.end());
  out.insert(out.end(), cert.ca_signature.begin(), cert.ca_signature.end());
  return out;
}

ProcessorAttestor::ProcessorAttestor(AttestPolicy policy,
                                     std::uint64_t rng_seed)
    : policy_(std::move(policy)), rng_seed_(rng_seed) {
  EnsureCryptoLibrary();
}

HandshakeResult ProcessorAttestor::Run(chip::KeyedRank& chip,
                                       crypto::TransactionCounter initial,
                                       HandshakeInterposer* mitm) {
  const std::uint64_t run = runs_++;
  const std::uint64_t nonce = rng_seed_ ^ (run * 0x9e3779b97f4a7c15ULL);

  // Processor -> chip.
  const Ephemeral proc = MakeEphemeral(SeedFrom(nonce, "processor-eph"));
  ProcessorHello hello{proc.pub};
  if (mitm != nullptr) mitm->OnHello(hello);

  // Chip: fresh ephemeral, signature over the transcript it sees.
  const Ephemeral chip_eph = MakeEphemeral(
      SeedFrom(nonce ^ (std::uint64_t{chip.rank_id()} << 48), "chip-eph"));
  ChipResponse response{chip_eph.pub, chip.certificate(), {}};
  const auto chip_view =
      TranscriptBytes(hello.ephemeral, chip_eph.pub, response.certificate);
  response.signature = chip.SignTranscript(chip_view);
  crypto::SecretKey chip_key;
  const bool chip_ok =
      DeriveKey(chip_eph, hello.ephemeral, Hash(chip_view), chip_key);
  if (mitm != nullptr) mitm->OnResponse(response);

  // Processor checks, cheapest first.
  const Certificate& cert = response.certificate;
  if (seen_chip_ephemerals_.count(response.ephemeral) != 0) {
    return Abort(AbortReason::kFreshness, "chip ephemeral seen before");
  }
  const auto cert_bytes = cert.SignedBytes();
  if (!VerifySignature(policy_.ca_root, cert_bytes, cert.ca_signature)) {
    return Abort(AbortReason::kCertificate, "certificate not issued by CA");
  }
  if (policy_.revoked_serials.count(cert.serial) != 0) {
    return Abort(AbortReason::kCertificate,
                 "certificate serial " + std::to_string(cert.serial) +
                     " revoked");
  }
  if (!policy_.pinned.empty()) {
    bool found = false;
    for (const auto& p : policy_.pinned) {
      found |= p.SignedBytes() == cert_bytes;
    }
    if (!found) {
      return Abort(AbortReason::kCertificate, "certificate not pinned");
    }
  }
  const auto proc_view =
      TranscriptBytes(proc.pub, response.ephemeral, cert);
  if (!VerifySignature(cert.ek_public, proc_view, response.signature)) {
    return Abort(AbortReason::kSignature, "transcript signature invalid");
  }
  HandshakeTranscript t;
  t.hash = Hash(proc_view);
  if (!chip_ok || !DeriveKey(proc, response.ephemeral, t.hash, t.key)) {
    return Abort(AbortReason::kSignature, "degenerate key share");
  }
  seen_chip_ephemerals_.insert(response.ephemeral);
  t.processor_ephemeral = proc.pub;
  t.chip_ephemeral = response.ephemeral;
  t.chip_signature = response.signature;
  t.chip_key = chip_key;
  t.initial_counter = initial;

  // The initial counter crosses the channel in the clear.
  crypto::TransactionCounter received = initial;
  if (mitm != nullptr) mitm->OnCounter(received);
  chip.InstallEpoch(chip_key, received);

  HandshakeResult out;
  out.transcript = t;
  return out;
}

double CounterLifetimeYears(double transactions_per_second) {
  const double seconds = std::ldexp(1.0, 64) / transactions_per_second;
  return seconds / (365.0 * 24 * 3600);
}

}  // namespace secddr::attest
