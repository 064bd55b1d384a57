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

#include "secddr/crypto/types.h"

#include <cstdio>

namespace secddr::crypto {
namespace {

int HexNibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

SecretKey SecretKey::FromWords(std::uint64_t lo, std::uint64_t hi) {
  std::array<std::uint8_t, kSize> b;
  StoreLe64(b.data(), lo);
  StoreLe64(b.data() + 8, hi);
  return SecretKey(b);
}

SecretKey SecretKey::FromHex(std::string_view hex) {
  if (hex.size() != 2 * kSize) {
    throw ContractError("SecretKey::FromHex: expected 32 hex characters");
  }
  std::array<std::uint8_t, kSize> b;
  for (std::size_t i = 0; i < kSize; ++i) {
    int hi = HexNibble(hex[2 * i]);
    int lo = HexNibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw ContractError("SecretKey::FromHex: invalid hex digit");
    }
    b[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return SecretKey(b);
}

std::uint64_t SecretKey::word0() const { return LoadLe64(bytes_.data()); }
std::uint64_t SecretKey::word1() const { return LoadLe64(bytes_.data() + 8); }
std::string SecretKey::ToHex() const { return crypto::ToHex(bytes_); }

MacWidth::MacWidth(unsigned bits) : bits_(bits) {
  if (bits == 0 || bits > 64) {
    throw ContractError("MacWidth must be in [1, 64]");
  }
}

std::string ToHex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace secddr::crypto
