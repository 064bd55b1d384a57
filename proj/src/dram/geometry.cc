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

#include "secddr/dram/geometry.h"

#include <bit>
#include <sstream>

namespace secddr::dram {
namespace {

bool Pow2(std::uint64_t v) { return v != 0 && std::has_single_bit(v); }

}  // namespace

std::string PhysicalAddress::ToString() const {
  std::ostringstream os;
  os << "ch" << channel << ".r" << rank << ".bg" << bank_group << ".b" << bank
     << ".row" << row << ".col" << column;
  return os.str();
}

void ValidateGeometry(const Geometry& g) {
  if (!Pow2(g.channels) || !Pow2(g.ranks) || !Pow2(g.bank_groups) ||
      !Pow2(g.banks_per_group) || !Pow2(g.rows) || !Pow2(g.columns)) {
    throw std::invalid_argument("geometry counts must be powers of two");
  }
  if (g.channels > 32 || g.ranks > 32 || g.bank_groups > 32 ||
      g.banks_per_group > 32 || g.columns > 4096) {
    throw std::invalid_argument("geometry field exceeds packed address width");
  }
  if (std::uint64_t{g.rows} + g.metadata_rows > 0xffffffffULL) {
    throw std::invalid_argument("row count exceeds 32 bits");
  }
}

PhysicalAddress AddressFromLine(std::uint64_t line, const Geometry& g) {
  PhysicalAddress a;
  a.channel = static_cast<std::uint32_t>(line % g.channels);
  line /= g.channels;
  a.bank_group = static_cast<std::uint32_t>(line % g.bank_groups);
  line /= g.bank_groups;
  a.column = static_cast<std::uint32_t>(line % g.columns);
  line /= g.columns;
  a.bank = static_cast<std::uint32_t>(line % g.banks_per_group);
  line /= g.banks_per_group;
  a.rank = static_cast<std::uint32_t>(line % g.ranks);
  line /= g.ranks;
  a.row = static_cast<std::uint32_t>(line);
  return a;
}

std::uint64_t LineIndex(const PhysicalAddress& a, const Geometry& g) {
  std::uint64_t line = a.row;
  line = line * g.ranks + a.rank;
  line = line * g.banks_per_group + a.bank;
  line = line * g.columns + a.column;
  line = line * g.bank_groups + a.bank_group;
  line = line * g.channels + a.channel;
  return line;
}

PhysicalAddress DecodeAddress(std::uint64_t byte_address, const Geometry& g) {
  const std::uint64_t line = byte_address / Geometry::kLineBytes;
  if (line >= g.data_lines()) {
    throw AddressError("address beyond configured capacity");
  }
  return AddressFromLine(line, g);
}

std::uint64_t EncodeAddress(const PhysicalAddress& a, const Geometry& g) {
  if (!g.Contains(a) || a.row >= g.rows) {
    throw AddressError("coordinates outside the data region");
  }
  return LineIndex(a, g) * Geometry::kLineBytes;
}

PhysicalAddress MetadataAddress(std::uint64_t meta_index, const Geometry& g) {
  if (meta_index >= g.metadata_lines()) {
    throw AddressError("metadata index beyond reserved rows");
  }
  return AddressFromLine(g.data_lines() + meta_index, g);
}

bool IsMetadataAddress(const PhysicalAddress& a, const Geometry& g) {
  return a.row >= g.rows;
}

}  // namespace secddr::dram
