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

#ifndef SECDDR_CRYPTO_OTP_H_
#define SECDDR_CRYPTO_OTP_H_

#include <cstdint>
#include <optional>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"

namespace secddr::crypto {

// One-time pad for a single channel transaction. `mac_pad` covers the E-MAC;
// `crc_pad` covers the encrypted eWCRC and is only meaningful for writes.
// Both come from one 128-bit PRF output (bits [0,64) and [64,80)).
struct Otp {
  std::uint64_t mac_pad = 0;
  std::uint16_t crc_pad = 0;
  friend bool operator==(const Otp&, const Otp&) = default;
};

// Reads use even nonces and writes odd nonces: nonce = (C << 1) | is_write.
// A write pad additionally binds the address the write is aimed at.
Otp DeriveOtp(const SecretKey& key, TransactionCounter counter, bool is_write,
              const std::optional<dram::PhysicalAddress>& write_addr);

inline Otp DeriveReadOtp(const SecretKey& key, TransactionCounter counter) {
  return DeriveOtp(key, counter, false, std::nullopt);
}
inline Otp DeriveWriteOtp(const SecretKey& key, TransactionCounter counter,
                          const dram::PhysicalAddress& addr) {
  return DeriveOtp(key, counter, true, addr);
}

// Both endpoints advance C_t by one after a read and by two after a write.
// The uneven step means a write that the module never saw, or saw as a read,
// leaves the two counters permanently apart.
inline constexpr std::uint64_t kReadCounterStep = 1;
inline constexpr std::uint64_t kWriteCounterStep = 2;

inline TransactionCounter Advance(TransactionCounter c, bool is_write) {
  return TransactionCounter{c.value +
                            (is_write ? kWriteCounterStep : kReadCounterStep)};
}

// XOR with the pad; its own inverse.
constexpr std::uint64_t EmacApply(std::uint64_t mac_or_emac,
                                  std::uint64_t pad) {
  return mac_or_emac ^ pad;
}

}  // namespace secddr::crypto

#endif  // SECDDR_CRYPTO_OTP_H_
