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

#include "secddr/chip/rank_logic.h"

#include "secddr/crypto/otp.h"

namespace secddr::chip {

WriteOutcome PassiveRank::HandleWrite(const dram::PhysicalAddress& addr,
                                      const dram::WriteBurst& burst,
                                      dram::DramStorage& storage) {
  storage.Write(addr, dram::SecureLine{burst.data, burst.ecc_lane});
  return WriteOutcome::kStored;
}

dram::ReadBurst PassiveRank::HandleRead(const dram::PhysicalAddress& addr,
                                        const dram::DramStorage& storage) {
  const dram::SecureLine line = storage.Read(addr);
  return dram::ReadBurst{line.data, line.ecc_meta};
}

KeyedRank::KeyedRank(std::uint32_t rank_id,
                     attest::EndorsementIdentity identity)
    : rank_id_(rank_id), identity_(std::move(identity)) {}

void KeyedRank::InstallEpoch(const crypto::SecretKey& key,
                             crypto::TransactionCounter initial) {
  state_.key = key;
  state_.counter = initial;
  state_.alert_pending = false;
}

void KeyedRank::PowerDown() {
  state_.key.reset();
  state_.alert_pending = false;
}

const crypto::SecretKey& KeyedRank::RequireKey() const {
  if (!state_.key) {
    throw ProtocolError("rank " + std::to_string(rank_id_) +
                        ": data transaction before epoch installation");
  }
  return *state_.key;
}

void KeyedRank::Advance(bool is_write) {
  state_.counter = crypto::Advance(state_.counter, is_write);
}

}  // namespace secddr::chip
