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

#include "secddr/chip/ecc_chip.h"

#include "secddr/crypto/crc16.h"
#include "secddr/crypto/otp.h"

namespace secddr::chip {

EccChip::EccChip(std::uint32_t rank_id, attest::EndorsementIdentity identity,
                 const dram::Geometry& geometry, crypto::MacWidth width)
    : KeyedRank(rank_id, std::move(identity)),
      geometry_(geometry),
      width_(width) {}

WriteOutcome EccChip::HandleWrite(const dram::PhysicalAddress& addr,
                                  const dram::WriteBurst& burst,
                                  dram::DramStorage& storage) {
  const crypto::SecretKey& key = RequireKey();
  const crypto::Otp pad = crypto::DeriveWriteOtp(key, counter(), addr);
  const std::uint64_t mac =
      crypto::EmacApply(burst.ecc_lane, pad.mac_pad) & width_.mask();
  const std::uint16_t expected =
      crypto::Crc16(crypto::BuildEwcrcMessage(mac, addr, geometry_));
  const std::uint16_t received =
      static_cast<std::uint16_t>(burst.wcrc ^ pad.crc_pad);
  if (expected != received) {
    RaiseAlert();
    return WriteOutcome::kEwcrcReject;
  }
  storage.Write(addr, dram::SecureLine{burst.data, mac});
  Advance(/*is_write=*/true);
  return WriteOutcome::kStored;
}

dram::ReadBurst EccChip::HandleRead(const dram::PhysicalAddress& addr,
                                    const dram::DramStorage& storage) {
  const crypto::SecretKey& key = RequireKey();
  const dram::SecureLine line = storage.Read(addr);
  const crypto::Otp pad = crypto::DeriveReadOtp(key, counter());
  Advance(/*is_write=*/false);
  return dram::ReadBurst{
      line.data,
      crypto::EmacApply(line.ecc_meta, pad.mac_pad & width_.mask())};
}

}  // namespace secddr::chip
