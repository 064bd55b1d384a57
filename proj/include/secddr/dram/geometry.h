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

#ifndef SECDDR_DRAM_GEOMETRY_H_
#define SECDDR_DRAM_GEOMETRY_H_

#include <cstdint>
#include <stdexcept>

#include "secddr/dram/address.h"

namespace secddr::dram {

class AddressError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Throws std::invalid_argument unless every count is a non-zero power of two
// and the packed coordinates fit PhysicalAddress::Pack().
void ValidateGeometry(const Geometry& g);

// Line-index bit order, least significant first:
//   channel | bank_group | column | bank | rank | row
// so consecutive lines alternate bank groups and then walk a row.
PhysicalAddress AddressFromLine(std::uint64_t line_index, const Geometry& g);
std::uint64_t LineIndex(const PhysicalAddress& a, const Geometry& g);

// Byte address -> coordinates. The low six bits are ignored. Throws
// AddressError for addresses at or beyond the data capacity.
PhysicalAddress DecodeAddress(std::uint64_t byte_address, const Geometry& g);
// Inverse of DecodeAddress for data rows; returns a 64-byte aligned address.
std::uint64_t EncodeAddress(const PhysicalAddress& a, const Geometry& g);

// Coordinates of the `meta_index`-th line of the metadata rows.
PhysicalAddress MetadataAddress(std::uint64_t meta_index, const Geometry& g);
bool IsMetadataAddress(const PhysicalAddress& a, const Geometry& g);

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_GEOMETRY_H_
