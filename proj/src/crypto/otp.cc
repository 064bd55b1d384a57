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

#include "secddr/crypto/otp.h"

#include "secddr/crypto/prf.h"

namespace secddr::crypto {

Otp DeriveOtp(const SecretKey& key, TransactionCounter counter, bool is_write,
              const std::optional<dram::PhysicalAddress>& write_addr) {
  if (is_write != write_addr.has_value()) {
    throw ContractError(is_write ? "DeriveOtp: write pad needs an address"
                                 : "DeriveOtp: read pad takes no address");
  }
  // Counters stay far below 2^63 in any realistic lifetime, so the shift
  // never discards a significant bit.
  const std::uint64_t nonce =
      (counter.value << 1) | static_cast<std::uint64_t>(is_write);
  Block128 b;
  if (is_write) {
    b = PrfBlock(key, Domain::kOtpWrite, {nonce, write_addr->Pack()});
  } else {
    b = PrfBlock(key, Domain::kOtpRead, {nonce});
  }
  return Otp{b.lo, static_cast<std::uint16_t>(b.hi)};
}

}  // namespace secddr::crypto
