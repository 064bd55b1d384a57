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

#ifndef SECDDR_CRYPTO_LINE_MAC_H_
#define SECDDR_CRYPTO_LINE_MAC_H_

#include <cstdint>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"

namespace secddr::crypto {

// Processor-side authentication tag over a line in its stored form and the
// line's physical address. Only processor-side code may call these.
std::uint64_t LineMac(const SecretKey& key, const Line& stored_data,
                      const dram::PhysicalAddress& addr,
                      MacWidth width = MacWidth());

// Tag that additionally binds a version number kept authentic by an on-chip
// root (encryption counter or write version of tree-protected lines).
std::uint64_t VersionedLineMac(const SecretKey& key, const Line& stored_data,
                               const dram::PhysicalAddress& addr,
                               std::uint64_t version,
                               MacWidth width = MacWidth());

}  // namespace secddr::crypto

#endif  // SECDDR_CRYPTO_LINE_MAC_H_
