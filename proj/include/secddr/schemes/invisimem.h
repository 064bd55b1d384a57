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

#ifndef SECDDR_SCHEMES_INVISIMEM_H_
#define SECDDR_SCHEMES_INVISIMEM_H_

#include <cstdint>

#include "secddr/chip/rank_logic.h"
#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"

namespace secddr::schemes {

// Per-transaction MAC of an authenticated channel: H_Kt(data, C_t), also
// bound to the direction and the address the endpoint acts on.
std::uint64_t ChannelMac(const crypto::SecretKey& key,
                         crypto::TransactionCounter counter, bool is_write,
                         const dram::PhysicalAddress& addr,
                         const crypto::Line& data, crypto::MacWidth width);

// Trusted module endpoint that authenticates every transfer in both
// directions. Writes whose MAC fails are refused and raise the alert.
class InvisimemDimm final : public chip::KeyedRank {
 public:
  InvisimemDimm(std::uint32_t rank_id, attest::EndorsementIdentity identity,
                crypto::MacWidth width);

  chip::WriteOutcome HandleWrite(const dram::PhysicalAddress& addr,
                                 const dram::WriteBurst& burst,
                                 dram::DramStorage& storage) override;
  dram::ReadBurst HandleRead(const dram::PhysicalAddress& addr,
                             const dram::DramStorage& storage) override;

 private:
  crypto::MacWidth width_;
};

}  // namespace secddr::schemes

#endif  // SECDDR_SCHEMES_INVISIMEM_H_
