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

#ifndef SECDDR_CRYPTO_TYPES_H_
#define SECDDR_CRYPTO_TYPES_H_

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace secddr::crypto {

// A 64-byte cache line in whatever form it currently has (plaintext,
// ciphertext, or stored form).
using Line = std::array<std::uint8_t, 64>;

// 128-bit PRF output, little-endian halves.
struct Block128 {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  friend bool operator==(const Block128&, const Block128&) = default;
};

// Raised when a caller breaks an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Opaque 16-byte key. Immutable after construction.
class SecretKey {
 public:
  static constexpr std::size_t kSize = 16;

  SecretKey() = default;
  explicit SecretKey(const std::array<std::uint8_t, kSize>& bytes)
      : bytes_(bytes) {}
  static SecretKey FromWords(std::uint64_t lo, std::uint64_t hi);
  // Parses 32 hex characters.
  static SecretKey FromHex(std::string_view hex);

  const std::array<std::uint8_t, kSize>& bytes() const { return bytes_; }
  std::uint64_t word0() const;
  std::uint64_t word1() const;
  std::string ToHex() const;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;

 private:
  std::array<std::uint8_t, kSize> bytes_{};
};

// Per-rank channel transaction counter (C_t).
struct TransactionCounter {
  std::uint64_t value = 0;
  friend auto operator<=>(const TransactionCounter&,
                          const TransactionCounter&) = default;
};

// Truncation width of line MACs and the matching E-MAC pad, in bits.
class MacWidth {
 public:
  constexpr MacWidth() = default;
  explicit MacWidth(unsigned bits);
  constexpr unsigned bits() const { return bits_; }
  constexpr std::uint64_t mask() const {
    return bits_ == 64 ? ~std::uint64_t{0}
                       : ((std::uint64_t{1} << bits_) - 1);
  }
  friend bool operator==(const MacWidth&, const MacWidth&) = default;

 private:
  unsigned bits_ = 64;
};

inline std::uint64_t LoadLe64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

inline void StoreLe64(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
}

std::string ToHex(std::span<const std::uint8_t> bytes);

}  // namespace secddr::crypto

#endif  // SECDDR_CRYPTO_TYPES_H_
