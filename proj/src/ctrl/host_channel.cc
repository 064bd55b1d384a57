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

#include "secddr/ctrl/host_channel.h"

#include <stdexcept>
#include <string>

#include "secddr/crypto/crc16.h"
#include "secddr/crypto/otp.h"
#include "secddr/schemes/invisimem.h"

namespace secddr::ctrl {

HostChannel::HostChannel(schemes::ChannelKind kind,
                         const dram::Geometry& geometry,
                         crypto::MacWidth width)
    : kind_(kind), geometry_(geometry), width_(width),
      ranks_(geometry.ranks) {}

void HostChannel::InstallEpoch(std::uint32_t rank,
                               const crypto::SecretKey& key,
                               crypto::TransactionCounter initial) {
  ranks_.at(rank) = RankEndpoint{key, initial};
}

void HostChannel::PowerDown() {
  for (auto& r : ranks_) r.key.reset();
}

const crypto::SecretKey& HostChannel::KeyFor(std::uint32_t rank) const {
  const auto& r = ranks_.at(rank);
  if (!r.key) {
    throw std::logic_error("host channel: rank " + std::to_string(rank) +
                           " has no transaction key");
  }
  return *r.key;
}

dram::WriteBurst HostChannel::FrameWrite(const dram::PhysicalAddress& addr,
                                         const crypto::Line& data,
                                         std::uint64_t stored_mac) const {
  dram::WriteBurst b;
  b.data = data;
  switch (kind_) {
    case schemes::ChannelKind::kPlain:
      b.ecc_lane = stored_mac;
      break;
    case schemes::ChannelKind::kSecddr: {
      const crypto::Otp pad = crypto::DeriveWriteOtp(
          KeyFor(addr.rank), ranks_[addr.rank].counter, addr);
      const std::uint64_t mac = stored_mac & width_.mask();
      b.ecc_lane = crypto::EmacApply(mac, pad.mac_pad & width_.mask());
      b.wcrc = static_cast<std::uint16_t>(
          crypto::Crc16(crypto::BuildEwcrcMessage(mac, addr, geometry_)) ^
          pad.crc_pad);
      break;
    }
    case schemes::ChannelKind::kInvisimem:
      b.ecc_lane = schemes::ChannelMac(KeyFor(addr.rank),
                                       ranks_[addr.rank].counter, true, addr,
                                       data, width_);
      break;
  }
  return b;
}

void HostChannel::CommitWrite(std::uint32_t rank) {
  if (!keyed()) return;
  auto& r = ranks_.at(rank);
  r.counter = crypto::Advance(r.counter, /*is_write=*/true);
}

HostChannel::Opened HostChannel::OpenRead(const dram::PhysicalAddress& addr,
                                          const dram::ReadBurst& burst) {
  Opened out;
  if (kind_ == schemes::ChannelKind::kPlain) {
    out.mac = burst.ecc_lane;
    return out;
  }
  auto& r = ranks_.at(addr.rank);
  const crypto::SecretKey& key = KeyFor(addr.rank);
  if (kind_ == schemes::ChannelKind::kSecddr) {
    const crypto::Otp pad = crypto::DeriveReadOtp(key, r.counter);
    out.mac = crypto::EmacApply(burst.ecc_lane, pad.mac_pad) & width_.mask();
  } else {
    out.channel_ok =
        (burst.ecc_lane & width_.mask()) ==
        schemes::ChannelMac(key, r.counter, false, addr, burst.data, width_);
  }
  r.counter = crypto::Advance(r.counter, /*is_write=*/false);
  return out;
}

}  // namespace secddr::ctrl
