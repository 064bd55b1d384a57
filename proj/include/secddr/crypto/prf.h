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

#ifndef SECDDR_CRYPTO_PRF_H_
#define SECDDR_CRYPTO_PRF_H_

#include <cstdint>
#include <initializer_list>
#include <span>

#include "secddr/crypto/types.h"

namespace secddr::crypto {

// Domain tags. Every keyed derivation in the simulator uses a distinct tag so
// that no two uses can produce the same PRF input.
enum class Domain : std::uint8_t {
  kLineMac = 1,
  kOtpRead = 2,
  kOtpWrite = 3,
  kXts = 4,
  kCtr = 5,
  kVersionedMac = 6,
  kChannelMac = 7,
  kMetadataContent = 8,
  kDimmMac = 9,
  kKeyDerivation = 10,
};

inline constexpr std::size_t kMaxPrfWords = 16;

// SipHash-2-4 with 128-bit output over raw bytes. Exposed for the reference
// test vectors.
Block128 SipHash128(const SecretKey& key, std::span<const std::uint8_t> msg);
// SipHash-2-4 with 64-bit output.
std::uint64_t SipHash64(const SecretKey& key,
                        std::span<const std::uint8_t> msg);

// Keyed 128-bit PRF. The message is the domain tag word followed by `inputs`,
// all little-endian. At most kMaxPrfWords inputs.
Block128 PrfBlock(const SecretKey& key, Domain tag,
                  std::span<const std::uint64_t> inputs);

inline Block128 PrfBlock(const SecretKey& key, Domain tag,
                         std::initializer_list<std::uint64_t> inputs) {
  return PrfBlock(key, tag,
                  std::span<const std::uint64_t>(inputs.begin(), inputs.size()));
}

}  // namespace secddr::crypto

#endif  // SECDDR_CRYPTO_PRF_H_
