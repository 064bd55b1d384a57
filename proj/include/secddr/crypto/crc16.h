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

#ifndef SECDDR_CRYPTO_CRC16_H_
#define SECDDR_CRYPTO_CRC16_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "secddr/dram/address.h"

namespace secddr::crypto {

// MSB-first bit string. Bits are appended most-significant first.
class BitString {
 public:
  BitString() = default;

  void AppendBits(std::uint64_t value, unsigned nbits);
  void AppendBytes(std::span<const std::uint8_t> bytes);

  std::size_t size_bits() const { return nbits_; }
  bool bit(std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
  }
  void flip(std::size_t i) { bytes_[i >> 3] ^= (0x80 >> (i & 7)); }
  // Zero-padded to a whole byte at the end.
  std::span<const std::uint8_t> bytes() const { return bytes_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t nbits_ = 0;
};

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
inline constexpr std::uint16_t kCrc16Poly = 0x1021;
inline constexpr std::uint16_t kCrc16Init = 0xFFFF;

std::uint16_t Crc16(std::span<const std::uint8_t> bytes);
std::uint16_t Crc16(const BitString& message);

// eWCRC message of one chip: its 8-byte write slice followed by the rank,
// bank group, bank, row and column fields at geometry width. The channel is
// deliberately excluded.
BitString BuildEwcrcMessage(std::uint64_t chip_slice,
                            const dram::PhysicalAddress& addr,
                            const dram::Geometry& geometry);

}  // namespace secddr::crypto

#endif  // SECDDR_CRYPTO_CRC16_H_
