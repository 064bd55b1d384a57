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

#ifndef SECDDR_CHIP_RANK_LOGIC_H_
#define SECDDR_CHIP_RANK_LOGIC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "secddr/attest/identity.h"
#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"
#include "secddr/dram/bus.h"
#include "secddr/dram/storage.h"

namespace secddr::chip {

// A data transaction reached a keyed rank before any epoch was installed.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WriteOutcome {
  kStored,
  kEwcrcReject,  // ECC chip refused the write; alert raised
  kMacReject,    // module-side per-transaction MAC mismatch; alert raised
  kIgnored,      // column command to a bank the module holds closed
};

// Volatile rank state that a frozen module carries along with its cells.
struct LogicState {
  std::optional<crypto::SecretKey> key;
  crypto::TransactionCounter counter;
  bool alert_pending = false;
};

// Behaviour of one rank's metadata path. Data chips are passive; whatever
// sits in the ECC lane is up to the implementation.
class RankLogic {
 public:
  virtual ~RankLogic() = default;

  virtual WriteOutcome HandleWrite(const dram::PhysicalAddress& addr,
                                   const dram::WriteBurst& burst,
                                   dram::DramStorage& storage) = 0;
  virtual dram::ReadBurst HandleRead(const dram::PhysicalAddress& addr,
                                     const dram::DramStorage& storage) = 0;

  virtual std::optional<LogicState> SaveState() const { return std::nullopt; }
  virtual void RestoreState(const LogicState& state) { (void)state; }
  virtual void PowerDown() {}
};

// Stores and returns bursts verbatim (encrypt-only, tree baselines).
class PassiveRank final : public RankLogic {
 public:
  WriteOutcome HandleWrite(const dram::PhysicalAddress& addr,
                           const dram::WriteBurst& burst,
                           dram::DramStorage& storage) override;
  dram::ReadBurst HandleRead(const dram::PhysicalAddress& addr,
                             const dram::DramStorage& storage) override;
};

// Rank endpoint with an endorsement identity and a per-epoch transaction key
// and counter. The signing key is reachable only through SignTranscript.
class KeyedRank : public RankLogic {
 public:
  KeyedRank(std::uint32_t rank_id, attest::EndorsementIdentity identity);

  std::uint32_t rank_id() const { return rank_id_; }
  const attest::Certificate& certificate() const {
    return identity_.certificate;
  }
  attest::Signature SignTranscript(std::span<const std::uint8_t> msg) const {
    return identity_.key.Sign(msg);
  }

  void InstallEpoch(const crypto::SecretKey& key,
                    crypto::TransactionCounter initial);
  bool has_key() const { return state_.key.has_value(); }
  crypto::TransactionCounter counter() const { return state_.counter; }
  bool alert_pending() const { return state_.alert_pending; }
  void ClearAlert() { state_.alert_pending = false; }

  std::optional<LogicState> SaveState() const override { return state_; }
  void RestoreState(const LogicState& state) override { state_ = state; }
  void PowerDown() override;

 protected:
  const crypto::SecretKey& RequireKey() const;
  void Advance(bool is_write);
  void RaiseAlert() { state_.alert_pending = true; }

 private:
  std::uint32_t rank_id_;
  attest::EndorsementIdentity identity_;
  LogicState state_;
};

}  // namespace secddr::chip

#endif  // SECDDR_CHIP_RANK_LOGIC_H_
