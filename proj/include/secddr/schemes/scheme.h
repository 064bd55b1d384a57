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

#ifndef SECDDR_SCHEMES_SCHEME_H_
#define SECDDR_SCHEMES_SCHEME_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace secddr::schemes {

enum class SchemeId {
  kEncryptXts,
  kEncryptCtr,
  kSecddrXts,
  kSecddrCtr,
  kTree64,
  kTree128,
  kMerkle8,
  kInvisimemReal,
  kInvisimemUnreal,
};

inline constexpr std::array<SchemeId, 9> kAllSchemes = {
    SchemeId::kEncryptXts,    SchemeId::kEncryptCtr, SchemeId::kSecddrXts,
    SchemeId::kSecddrCtr,     SchemeId::kTree64,     SchemeId::kTree128,
    SchemeId::kMerkle8,       SchemeId::kInvisimemReal,
    SchemeId::kInvisimemUnreal};

std::string_view SchemeName(SchemeId id);
std::optional<SchemeId> ParseScheme(std::string_view name);

enum class Cipher { kXts, kCtr };

// What protects a transfer on the wire.
enum class ChannelKind {
  kPlain,      // stored MAC (if any) travels as is
  kSecddr,     // E-MAC plus encrypted eWCRC, ECC chip endpoint
  kInvisimem,  // per-transaction MAC verified by a trusted module
};

// How a line's stored MAC is formed.
enum class LineMacKind {
  kNone,
  kPlain,      // H_k(stored data, address)
  kVersioned,  // additionally binds the line's tree-protected version
};

struct SchemeTraits {
  SchemeId id = SchemeId::kEncryptXts;
  Cipher cipher = Cipher::kXts;
  ChannelKind channel = ChannelKind::kPlain;
  LineMacKind line_mac = LineMacKind::kNone;

  // Metadata in memory. `per_leaf` data lines share one leaf line; `arity`
  // is the fan-out of tree nodes above the leaves (0: leaves only, no tree).
  bool has_metadata = false;
  unsigned per_leaf = 0;
  unsigned arity = 0;
  // Leaf lines are MAC'd and carried through the protected channel exactly
  // like data lines.
  bool metadata_via_channel = false;
  // Metadata lines are checked against the on-chip tree when fetched.
  bool metadata_tree_checked = false;

  // Scheme-imposed channel parameters.
  std::optional<unsigned> write_burst_cycles;
  std::optional<unsigned> bus_mhz;
  // Bus cycles the module holds received write data before it can commit
  // it (the ECC chip waiting for its address-bound write pad).
  unsigned write_commit_delay = 0;
  // Module-side MAC work on the critical path, in processor cycles; applied
  // before read data leaves and after write data arrives.
  unsigned module_mac_cpu_cycles = 0;
};

// Fixed per-scheme properties. `secddr_write_otp_cycles` is the OTP^w
// delay applied by SecDDR variants.
SchemeTraits TraitsOf(SchemeId id, unsigned secddr_write_otp_cycles = 8,
                      unsigned crypt_mac_cpu_cycles = 40);

}  // namespace secddr::schemes

#endif  // SECDDR_SCHEMES_SCHEME_H_
