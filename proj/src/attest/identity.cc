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

#include "secddr/attest/identity.h"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace secddr::attest {

void EnsureCryptoLibrary() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
  });
}

bool VerifySignature(const PublicKey& key, std::span<const std::uint8_t> msg,
                     const Signature& sig) {
  EnsureCryptoLibrary();
  return crypto_sign_verify_detached(sig.data(), msg.data(), msg.size(),
                                     key.data()) == 0;
}

std::vector<std::uint8_t> Certificate::SignedBytes() const {
  std::vector<std::uint8_t> out(ek_public.begin(), ek_public.end());
  out.insert(out.end(), vendor.begin(), vendor.end());
  out.push_back(0);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(serial >> (8 * i)));
  }
  return out;
}

CertificateAuthority CertificateAuthority::FromSeed(const Seed& seed) {
  EnsureCryptoLibrary();
  CertificateAuthority ca;
  crypto_sign_seed_keypair(ca.public_.data(), ca.secret_.data(), seed.data());
  return ca;
}

Certificate CertificateAuthority::Issue(const PublicKey& ek_public,
                                        std::string vendor,
                                        std::uint64_t serial) const {
  Certificate cert{ek_public, std::move(vendor), serial, {}};
  auto bytes = cert.SignedBytes();
  crypto_sign_detached(cert.ca_signature.data(), nullptr, bytes.data(),
                       bytes.size(), secret_.data());
  return cert;
}

EndorsementKey EndorsementKey::FromSeed(const Seed& seed) {
  EnsureCryptoLibrary();
  EndorsementKey k;
  crypto_sign_seed_keypair(k.public_.data(), k.secret_.data(), seed.data());
  return k;
}

Signature EndorsementKey::Sign(std::span<const std::uint8_t> msg) const {
  Signature sig;
  crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(),
                       secret_.data());
  return sig;
}

EndorsementIdentity MakeIdentity(const CertificateAuthority& ca,
                                 const Seed& ek_seed, std::string vendor,
                                 std::uint64_t serial) {
  EndorsementKey key = EndorsementKey::FromSeed(ek_seed);
  Certificate cert = ca.Issue(key.public_key(), std::move(vendor), serial);
  return EndorsementIdentity{key, std::move(cert)};
}

Seed SeedFrom(std::uint64_t value, std::string_view label) {
  EnsureCryptoLibrary();
  std::vector<std::uint8_t> msg(label.begin(), label.end());
  for (int i = 0; i < 8; ++i) {
    msg.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
  Seed seed;
  crypto_generichash(seed.data(), seed.size(), msg.data(), msg.size(),
                     nullptr, 0);
  return seed;
}

}  // namespace secddr::attest
