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

#ifndef SECDDR_ATTEST_IDENTITY_H_
#define SECDDR_ATTEST_IDENTITY_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace secddr::attest {

using Seed = std::array<std::uint8_t, 32>;
using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

// Initialises libsodium once; safe to call repeatedly.
void EnsureCryptoLibrary();

bool VerifySignature(const PublicKey& key, std::span<const std::uint8_t> msg,
                     const Signature& sig);

// Device certificate: the endorsement public key bound to a vendor and
// serial number by the CA's signature.
struct Certificate {
  PublicKey ek_public{};
  std::string vendor;
  std::uint64_t serial = 0;
  Signature ca_signature{};

  std::vector<std::uint8_t> SignedBytes() const;
};

class CertificateAuthority {
 public:
  static CertificateAuthority FromSeed(const Seed& seed);

  const PublicKey& root() const { return public_; }
  Certificate Issue(const PublicKey& ek_public, std::string vendor,
                    std::uint64_t serial) const;

 private:
  PublicKey public_{};
  std::array<std::uint8_t, 64> secret_{};
};

// Chip-resident signing key (EK_s with its public half EK_p). The secret half
// has no accessor.
class EndorsementKey {
 public:
  static EndorsementKey FromSeed(const Seed& seed);

  const PublicKey& public_key() const { return public_; }
  Signature Sign(std::span<const std::uint8_t> msg) const;

 private:
  PublicKey public_{};
  std::array<std::uint8_t, 64> secret_{};
};

struct EndorsementIdentity {
  EndorsementKey key;
  Certificate certificate;
};

// Builds a CA-issued identity from a seed, for test fixtures and scenarios.
EndorsementIdentity MakeIdentity(const CertificateAuthority& ca,
                                 const Seed& ek_seed, std::string vendor,
                                 std::uint64_t serial);

// Deterministic seed from a 64-bit value and a label.
Seed SeedFrom(std::uint64_t value, std::string_view label);

}  // namespace secddr::attest

#endif  // SECDDR_ATTEST_IDENTITY_H_
