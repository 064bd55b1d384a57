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

#ifndef SECDDR_SCHEMES_LINE_CODEC_H_
#define SECDDR_SCHEMES_LINE_CODEC_H_

#include <cstdint>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"
#include "secddr/dram/storage.h"
#include "secddr/schemes/scheme.h"

namespace secddr::schemes {

// Long-lived processor keys of one boot: line encryption and line MACs.
struct ProcessorKeys {
  crypto::SecretKey data_key;
  crypto::SecretKey mac_key;
};

// Processor-side transform between plaintext lines and their stored form,
// plus the stored MAC each scheme keeps. `version` is the line's encryption
// counter (CTR) or write version (versioned MACs); ignored otherwise.
class LineCodec {
 public:
  LineCodec(const SchemeTraits& traits, const ProcessorKeys& keys,
            crypto::MacWidth width);

  crypto::Line Encrypt(const dram::PhysicalAddress& addr,
                       std::uint64_t version,
                       const crypto::Line& plaintext) const;
  crypto::Line Decrypt(const dram::PhysicalAddress& addr,
                       std::uint64_t version,
                       const crypto::Line& stored) const;

  // Zero when the scheme keeps no per-line MAC.
  std::uint64_t StoredMac(const dram::PhysicalAddress& addr,
                          std::uint64_t version,
                          const crypto::Line& stored) const;
  // Always true when the scheme keeps no per-line MAC.
  bool CheckMac(const dram::PhysicalAddress& addr, std::uint64_t version,
                const crypto::Line& stored, std::uint64_t mac) const;

  // Content of a metadata line at a given version, and its MAC when the
  // metadata travels like data.
  crypto::Line MetadataContent(std::uint64_t meta_index,
                               std::uint64_t version) const;
  std::uint64_t MetadataMac(const dram::PhysicalAddress& addr,
                            const crypto::Line& content) const;

  // What a freshly cleared line holds: zero plaintext (version 0) in stored
  // form with its MAC, or version-0 metadata content.
  dram::SecureLine ClearedDataLine(const dram::PhysicalAddress& addr) const;
  dram::SecureLine ClearedMetadataLine(const dram::PhysicalAddress& addr,
                                       std::uint64_t meta_index) const;

  const SchemeTraits& traits() const { return traits_; }
  crypto::MacWidth width() const { return width_; }

 private:
  SchemeTraits traits_;
  ProcessorKeys keys_;
  crypto::MacWidth width_;
};

}  // namespace secddr::schemes

#endif  // SECDDR_SCHEMES_LINE_CODEC_H_
