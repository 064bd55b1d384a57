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

#ifndef SECDDR_CHIP_ECC_CHIP_H_
#define SECDDR_CHIP_ECC_CHIP_H_

#include "secddr/chip/rank_logic.h"
#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"

namespace secddr::chip {

// Memory-side logic of one rank's ECC chip. It strips and applies one-time
// pads and checks the encrypted write CRC; it never authenticates data.
class EccChip final : public KeyedRank {
 public:
  EccChip(std::uint32_t rank_id, attest::EndorsementIdentity identity,
          const dram::Geometry& geometry, crypto::MacWidth width);

  // Verifies the eWCRC against the address as received. Accepted writes
  // store (data, decrypted MAC); rejected writes leave storage and C_t
  // untouched and raise the alert.
  WriteOutcome HandleWrite(const dram::PhysicalAddress& addr,
                           const dram::WriteBurst& burst,
                           dram::DramStorage& storage) override;
  // Returns the stored data and the MAC re-encrypted under the read pad.
  dram::ReadBurst HandleRead(const dram::PhysicalAddress& addr,
                             const dram::DramStorage& storage) override;

 private:
  dram::Geometry geometry_;
  crypto::MacWidth width_;
};

}  // namespace secddr::chip

#endif  // SECDDR_CHIP_ECC_CHIP_H_
