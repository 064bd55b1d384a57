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

#ifndef SECDDR_DRAM_ADDRESS_H_
#define SECDDR_DRAM_ADDRESS_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <string>

namespace secddr::dram {

// Coordinates of one 64-byte line. `column` counts lines within a row.
struct PhysicalAddress {
  std::uint32_t channel = 0;
  std::uint32_t rank = 0;
  std::uint32_t bank_group = 0;
  std::uint32_t bank = 0;
  std::uint32_t row = 0;
  std::uint32_t column = 0;

  friend auto operator<=>(const PhysicalAddress&,
                          const PhysicalAddress&) = default;

  // Geometry-independent packing used as the address input of every keyed
  // primitive: row[63:32] column[31:20] bank[19:15] group[14:10] rank[9:5]
  // channel[4:0].
  constexpr std::uint64_t Pack() const {
    return (std::uint64_t{row} << 32) | (std::uint64_t{column} << 20) |
           (std::uint64_t{bank} << 15) | (std::uint64_t{bank_group} << 10) |
           (std::uint64_t{rank} << 5) | std::uint64_t{channel};
  }

  std::string ToString() const;
};

// Channel organisation. All counts are powers of two. `metadata_rows` extra
// rows per bank sit above the data rows and hold scheme metadata; they are
// not reachable through byte-address decoding.
struct Geometry {
  std::uint32_t channels = 1;
  std::uint32_t ranks = 2;
  std::uint32_t bank_groups = 4;
  std::uint32_t banks_per_group = 4;
  std::uint32_t rows = 1u << 16;
  std::uint32_t columns = 1u << 7;
  std::uint32_t metadata_rows = 0;

  static constexpr std::uint64_t kLineBytes = 64;

  constexpr std::uint32_t banks_per_rank() const {
    return bank_groups * banks_per_group;
  }
  constexpr std::uint64_t lines_per_row_slice() const {
    // one row index across every bank of every rank and channel
    return std::uint64_t{channels} * ranks * bank_groups * banks_per_group *
           columns;
  }
  constexpr std::uint64_t data_lines() const {
    return lines_per_row_slice() * rows;
  }
  constexpr std::uint64_t capacity_bytes() const {
    return data_lines() * kLineBytes;
  }
  constexpr std::uint64_t metadata_lines() const {
    return lines_per_row_slice() * metadata_rows;
  }
  constexpr std::uint32_t total_rows() const { return rows + metadata_rows; }

  // Field widths of the eWCRC address fields.
  static constexpr unsigned FieldBits(std::uint64_t count) {
    return count <= 1 ? 0u
                      : static_cast<unsigned>(std::bit_width(count - 1));
  }
  constexpr unsigned rank_bits() const { return FieldBits(ranks); }
  constexpr unsigned bank_group_bits() const { return FieldBits(bank_groups); }
  constexpr unsigned bank_bits() const { return FieldBits(banks_per_group); }
  constexpr unsigned row_bits() const { return FieldBits(total_rows()); }
  constexpr unsigned column_bits() const { return FieldBits(columns); }

  bool Contains(const PhysicalAddress& a) const {
    return a.channel < channels && a.rank < ranks &&
           a.bank_group < bank_groups && a.bank < banks_per_group &&
           a.row < total_rows() && a.column < columns;
  }

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_ADDRESS_H_
