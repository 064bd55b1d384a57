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

#ifndef SECDDR_DRAM_BUS_H_
#define SECDDR_DRAM_BUS_H_

#include <cstdint>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"
#include "secddr/dram/channel.h"
#include "secddr/dram/timing.h"

namespace secddr::dram {

// Messages as they travel on the channel. For column commands only the
// rank/bank-group/bank/column fields are driven on the wire; the module uses
// the row it opened on the preceding ACTIVATE.
struct CommandMsg {
  Command cmd = Command::kActivate;
  PhysicalAddress addr;
};

// Data beats of one write: the data chips' 64 bytes, the ECC lane (stored
// MAC, E-MAC or per-transaction MAC depending on the scheme) and the ECC
// chip's write CRC (encrypted eWCRC under SecDDR, otherwise zero).
struct WriteBurst {
  crypto::Line data{};
  std::uint64_t ecc_lane = 0;
  std::uint16_t wcrc = 0;
  friend bool operator==(const WriteBurst&, const WriteBurst&) = default;
};

struct ReadBurst {
  crypto::Line data{};
  std::uint64_t ecc_lane = 0;
  friend bool operator==(const ReadBurst&, const ReadBurst&) = default;
};

enum class Disposition {
  kForward,
  kDrop,           // command never reaches the module
  kConvertToRead,  // a WRITE arrives as a READ; its data beats are discarded
                   // and the module's response is swallowed
};

struct BusContext {
  std::uint64_t transaction_index = 0;  // column commands issued so far
  Cycle now = 0;
};

// Man-in-the-middle hook between controller and module. Sees only wire
// messages.
class BusInterposer {
 public:
  virtual ~BusInterposer() = default;
  virtual Disposition OnCommand(CommandMsg& msg, const BusContext& ctx) {
    (void)msg;
    (void)ctx;
    return Disposition::kForward;
  }
  virtual void OnWriteData(const CommandMsg& msg, WriteBurst& burst,
                           const BusContext& ctx) {
    (void)msg;
    (void)burst;
    (void)ctx;
  }
  virtual void OnReadData(const CommandMsg& msg, ReadBurst& burst,
                          const BusContext& ctx) {
    (void)msg;
    (void)burst;
    (void)ctx;
  }
};

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_BUS_H_
