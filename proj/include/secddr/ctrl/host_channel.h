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

#ifndef SECDDR_CTRL_HOST_CHANNEL_H_
#define SECDDR_CTRL_HOST_CHANNEL_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"
#include "secddr/dram/bus.h"
#include "secddr/schemes/scheme.h"

namespace secddr::ctrl {

// Processor end of the channel protection, one transaction key and counter
// per rank. Mirrors the module endpoint step for step.
class HostChannel {
 public:
  HostChannel(schemes::ChannelKind kind, const dram::Geometry& geometry,
              crypto::MacWidth width);

  void InstallEpoch(std::uint32_t rank, const crypto::SecretKey& key,
                    crypto::TransactionCounter initial);
  void PowerDown();
  bool keyed() const { return kind_ != schemes::ChannelKind::kPlain; }
  crypto::TransactionCounter counter(std::uint32_t rank) const {
    return ranks_.at(rank).counter;
  }

  // Wire form of a write carrying `stored_mac` in the ECC lane, under the
  // current counter. Does not advance it.
  dram::WriteBurst FrameWrite(const dram::PhysicalAddress& addr,
                              const crypto::Line& data,
                              std::uint64_t stored_mac) const;
  // Called once the module accepted the write.
  void CommitWrite(std::uint32_t rank);

  struct Opened {
    std::uint64_t mac = 0;    // stored MAC recovered from the ECC lane
    bool channel_ok = true;   // per-transaction MAC check (authenticated
                              // channels only)
  };
  // Strips the channel protection from a read response and advances the
  // counter.
  Opened OpenRead(const dram::PhysicalAddress& addr,
                  const dram::ReadBurst& burst);

 private:
  struct RankEndpoint {
    std::optional<crypto::SecretKey> key;
    crypto::TransactionCounter counter;
  };
  const crypto::SecretKey& KeyFor(std::uint32_t rank) const;

  schemes::ChannelKind kind_;
  dram::Geometry geometry_;
  crypto::MacWidth width_;
  std::vector<RankEndpoint> ranks_;
};

}  // namespace secddr::ctrl

#endif  // SECDDR_CTRL_HOST_CHANNEL_H_
