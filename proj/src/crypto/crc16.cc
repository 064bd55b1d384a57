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

#include "secddr/crypto/crc16.h"

#include <array>

namespace secddr::crypto {
namespace {

constexpr std::array<std::uint16_t, 256> MakeTable() {
  std::array<std::uint16_t, 256> t{};
  for (unsigned b = 0; b < 256; ++b) {
    std::uint16_t crc = static_cast<std::uint16_t>(b << 8);
    for (int i = 0; i < 8; ++i) {
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ kCrc16Poly)
                           : static_cast<std::uint16_t>(crc << 1);
    }
    t[b] = crc;
  }
  return t;
}

constexpr auto kTable = MakeTable();

std::uint16_t UpdateBytes(std::uint16_t crc, std::span<const std::uint8_t> b) {
  for (std::uint8_t byte : b) {
    crc = static_cast<std::uint16_t>((crc << 8) ^ kTable[(crc >> 8) ^ byte]);
  }
  return crc;
}

}  // namespace

void BitString::AppendBits(std::uint64_t value, unsigned nbits) {
  for (unsigned i = nbits; i-- > 0;) {
    if ((nbits_ & 7) == 0) bytes_.push_back(0);
    if ((value >> i) & 1) bytes_.back() |= 0x80 >> (nbits_ & 7);
    ++nbits_;
  }
}

void BitString::AppendBytes(std::span<const std::uint8_t> bytes) {
  if ((nbits_ & 7) == 0) {
    bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
    nbits_ += 8 * bytes.size();
    return;
  }
  for (std::uint8_t b : bytes) AppendBits(b, 8);
}

std::uint16_t Crc16(std::span<const std::uint8_t> bytes) {
  return UpdateBytes(kCrc16Init, bytes);
}

std::uint16_t Crc16(const BitString& message) {
  const std::size_t whole = message.size_bits() / 8;
  std::uint16_t crc =
      UpdateBytes(kCrc16Init, message.bytes().first(whole));
  for (std::size_t i = whole * 8; i < message.size_bits(); ++i) {
    const bool top = ((crc >> 15) & 1) != message.bit(i);
    crc = static_cast<std::uint16_t>(crc << 1);
    if (top) crc ^= kCrc16Poly;
  }
  return crc;
}

BitString BuildEwcrcMessage(std::uint64_t chip_slice,
                            const dram::PhysicalAddress& addr,
                            const dram::Geometry& geometry) {
  BitString m;
  m.AppendBits(chip_slice, 64);
  m.AppendBits(addr.rank, geometry.rank_bits());
  m.AppendBits(addr.bank_group, geometry.bank_group_bits());
  m.AppendBits(addr.bank, geometry.bank_bits());
  m.AppendBits(addr.row, geometry.row_bits());
  m.AppendBits(addr.column, geometry.column_bits());
  return m;
}

}  // namespace secddr::crypto
