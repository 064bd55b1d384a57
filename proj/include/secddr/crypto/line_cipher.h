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

#ifndef SECDDR_CRYPTO_LINE_CIPHER_H_
#define SECDDR_CRYPTO_LINE_CIPHER_H_

#include <cstdint>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"

namespace secddr::crypto {

// Position-tweaked XOR-permute-XOR over four 16-byte sub-blocks. Same
// (address, plaintext) always gives the same ciphertext.
Line XtsLineEncrypt(const SecretKey& key, const dram::PhysicalAddress& addr,
                    const Line& plaintext);
Line XtsLineDecrypt(const SecretKey& key, const dram::PhysicalAddress& addr,
                    const Line& ciphertext);

// Counter-mode pad stream keyed by (address, encryption counter). Applying it
// twice with the same inputs returns the original line.
Line CtrLineEncrypt(const SecretKey& key, const dram::PhysicalAddress& addr,
                    std::uint64_t enc_counter, const Line& plaintext);
inline Line CtrLineDecrypt(const SecretKey& key,
                           const dram::PhysicalAddress& addr,
                           std::uint64_t enc_counter, const Line& ciphertext) {
  return CtrLineEncrypt(key, addr, enc_counter, ciphertext);
}

}  // namespace secddr::crypto

#endif  // SECDDR_CRYPTO_LINE_CIPHER_H_
