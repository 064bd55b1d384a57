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

#include "secddr/schemes/line_codec.h"

#include "secddr/crypto/line_cipher.h"
#include "secddr/crypto/line_mac.h"
#include "secddr/crypto/prf.h"

namespace secddr::schemes {

LineCodec::LineCodec(const SchemeTraits& traits, const ProcessorKeys& keys,
                     crypto::MacWidth width)
    : traits_(traits), keys_(keys), width_(width) {}

crypto::Line LineCodec::Encrypt(const dram::PhysicalAddress& addr,
                                std::uint64_t version,
                                const crypto::Line& plaintext) const {
  if (traits_.cipher == Cipher::kCtr) {
    return crypto::CtrLineEncrypt(keys_.data_key, addr, version, plaintext);
  }
  return crypto::XtsLineEncrypt(keys_.data_key, addr, plaintext);
}

crypto::Line LineCodec::Decrypt(const dram::PhysicalAddress& addr,
                                std::uint64_t version,
                                const crypto::Line& stored) const {
  if (traits_.cipher == Cipher::kCtr) {
    return crypto::CtrLineDecrypt(keys_.data_key, addr, version, stored);
  }
  return crypto::XtsLineDecrypt(keys_.data_key, addr, stored);
}

std::uint64_t LineCodec::StoredMac(const dram::PhysicalAddress& addr,
                                   std::uint64_t version,
                                   const crypto::Line& stored) const {
  switch (traits_.line_mac) {
    case LineMacKind::kNone:
      return 0;
    case LineMacKind::kPlain:
      return crypto::LineMac(keys_.mac_key, stored, addr, width_);
    case LineMacKind::kVersioned:
      return crypto::VersionedLineMac(keys_.mac_key, stored, addr, version,
                                      width_);
  }
  return 0;
}

bool LineCodec::CheckMac(const dram::PhysicalAddress& addr,
                         std::uint64_t version, const crypto::Line& stored,
                         std::uint64_t mac) const {
  if (traits_.line_mac == LineMacKind::kNone) return true;
  return StoredMac(addr, version, stored) == (mac & width_.mask());
}

crypto::Line LineCodec::MetadataContent(std::uint64_t meta_index,
                                        std::uint64_t version) const {
  crypto::Line out;
  for (std::uint64_t i = 0; i < 4; ++i) {
    const crypto::Block128 b = crypto::PrfBlock(
        keys_.mac_key, crypto::Domain::kMetadataContent,
        {meta_index, version, i});
    crypto::StoreLe64(&out[16 * i], b.lo);
    crypto::StoreLe64(&out[16 * i + 8], b.hi);
  }
  return out;
}

std::uint64_t LineCodec::MetadataMac(const dram::PhysicalAddress& addr,
                                     const crypto::Line& content) const {
  if (!traits_.metadata_via_channel) return 0;
  return crypto::LineMac(keys_.mac_key, content, addr, width_);
}

dram::SecureLine LineCodec::ClearedDataLine(
    const dram::PhysicalAddress& addr) const {
  const crypto::Line stored = Encrypt(addr, 0, crypto::Line{});
  return dram::SecureLine{stored, StoredMac(addr, 0, stored)};
}

dram::SecureLine LineCodec::ClearedMetadataLine(
    const dram::PhysicalAddress& addr, std::uint64_t meta_index) const {
  const crypto::Line content = MetadataContent(meta_index, 0);
  return dram::SecureLine{content, MetadataMac(addr, content)};
}

}  // namespace secddr::schemes
