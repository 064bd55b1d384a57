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

#include "secddr/schemes/scheme.h"

namespace secddr::schemes {

std::string_view SchemeName(SchemeId id) {
  switch (id) {
    case SchemeId::kEncryptXts: return "encrypt_xts";
    case SchemeId::kEncryptCtr: return "encrypt_ctr";
    case SchemeId::kSecddrXts: return "secddr_xts";
    case SchemeId::kSecddrCtr: return "secddr_ctr";
    case SchemeId::kTree64: return "tree64";
    case SchemeId::kTree128: return "tree128";
    case SchemeId::kMerkle8: return "merkle8";
    case SchemeId::kInvisimemReal: return "invisimem_real";
    case SchemeId::kInvisimemUnreal: return "invisimem_unreal";
  }
  return "?";
}

std::optional<SchemeId> ParseScheme(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (SchemeName(id) == name) return id;
  }
  return std::nullopt;
}

SchemeTraits TraitsOf(SchemeId id, unsigned secddr_write_otp_cycles,
                      unsigned crypt_mac_cpu_cycles) {
  SchemeTraits t;
  t.id = id;
  switch (id) {
    case SchemeId::kEncryptXts:
      break;
    case SchemeId::kEncryptCtr:
      t.cipher = Cipher::kCtr;
      t.has_metadata = true;
      t.per_leaf = 64;
      break;
    case SchemeId::kSecddrXts:
      t.channel = ChannelKind::kSecddr;
      t.line_mac = LineMacKind::kPlain;
      t.write_burst_cycles = 5;
      t.write_commit_delay = secddr_write_otp_cycles;
      break;
    case SchemeId::kSecddrCtr:
      t.cipher = Cipher::kCtr;
      t.channel = ChannelKind::kSecddr;
      t.line_mac = LineMacKind::kPlain;
      t.has_metadata = true;
      t.per_leaf = 64;
      t.metadata_via_channel = true;
      t.write_burst_cycles = 5;
      t.write_commit_delay = secddr_write_otp_cycles;
      break;
    case SchemeId::kTree64:
    case SchemeId::kTree128: {
      const unsigned a = id == SchemeId::kTree64 ? 64 : 128;
      t.cipher = Cipher::kCtr;
      t.line_mac = LineMacKind::kVersioned;
      t.has_metadata = true;
      t.per_leaf = a;
      t.arity = a;
      t.metadata_tree_checked = true;
      break;
    }
    case SchemeId::kMerkle8:
      t.line_mac = LineMacKind::kVersioned;
      t.has_metadata = true;
      t.per_leaf = 8;
      t.arity = 8;
      t.metadata_tree_checked = true;
      break;
    case SchemeId::kInvisimemReal:
    case SchemeId::kInvisimemUnreal:
      t.channel = ChannelKind::kInvisimem;
      t.module_mac_cpu_cycles = crypt_mac_cpu_cycles;
      if (id == SchemeId::kInvisimemReal) t.bus_mhz = 1200;
      break;
  }
  return t;
}

}  // namespace secddr::schemes
