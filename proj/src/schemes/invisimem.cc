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

#include "secddr/schemes/invisimem.h"

#include <array>

#include "secddr/crypto/prf.h"

namespace secddr::schemes {

std::uint64_t ChannelMac(const crypto::SecretKey& key,
                         crypto::TransactionCounter counter, bool is_write,
                         const dram::PhysicalAddress& addr,
                         const crypto::Line& data, crypto::MacWidth width) {
  std::array<std::uint64_t, 11> words;
  words[0] = counter.value;
  words[1] = is_write ? 1 : 0;
  words[2] = addr.Pack();
  for (int i = 0; i < 8; ++i) words[3 + i] = crypto::LoadLe64(&data[8 * i]);
  return crypto::PrfBlock(key, crypto::Domain::kChannelMac, words).lo &
         width.mask();
}

InvisimemDimm::InvisimemDimm(std::uint32_t rank_id,
                             attest::EndorsementIdentity identity,
                             crypto::MacWidth width)
    : KeyedRank(rank_id, std::move(identity)), width_(width) {}

chip::WriteOutcome InvisimemDimm::HandleWrite(
    const dram::PhysicalAddress& addr, const dram::WriteBurst& burst,
    dram::DramStorage& storage) {
  const crypto::SecretKey& key = RequireKey();
  if ((burst.ecc_lane & width_.mask()) !=
      ChannelMac(key, counter(), true, addr, burst.data, width_)) {
    RaiseAlert();
    return chip::WriteOutcome::kMacReject;
  }
  storage.Write(addr, dram::SecureLine{burst.data, 0});
  Advance(/*is_write=*/true);
  return chip::WriteOutcome::kStored;
}

dram::ReadBurst InvisimemDimm::HandleRead(const dram::PhysicalAddress& addr,
                                          const dram::DramStorage& storage) {
  const crypto::SecretKey& key = RequireKey();
  const dram::SecureLine line = storage.Read(addr);
  const std::uint64_t mac =
      ChannelMac(key, counter(), false, addr, line.data, width_);
  Advance(/*is_write=*/false);
  return dram::ReadBurst{line.data, mac};
}

}  // namespace secddr::schemes
