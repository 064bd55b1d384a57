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

#include "secddr/crypto/line_mac.h"

#include <array>

#include "secddr/crypto/prf.h"

namespace secddr::crypto {
namespace {

std::array<std::uint64_t, 10> MacInputs(const Line& data,
                                        const dram::PhysicalAddress& addr,
                                        std::uint64_t version) {
  std::array<std::uint64_t, 10> words;
  words[0] = addr.Pack();
  for (int i = 0; i < 8; ++i) words[1 + i] = LoadLe64(&data[8 * i]);
  words[9] = version;
  return words;
}

}  // namespace

std::uint64_t LineMac(const SecretKey& key, const Line& stored_data,
                      const dram::PhysicalAddress& addr, MacWidth width) {
  auto words = MacInputs(stored_data, addr, 0);
  Block128 b = PrfBlock(key, Domain::kLineMac,
                        std::span<const std::uint64_t>(words.data(), 9));
  return b.lo & width.mask();
}

std::uint64_t VersionedLineMac(const SecretKey& key, const Line& stored_data,
                               const dram::PhysicalAddress& addr,
                               std::uint64_t version, MacWidth width) {
  auto words = MacInputs(stored_data, addr, version);
  Block128 b = PrfBlock(key, Domain::kVersionedMac, words);
  return b.lo & width.mask();
}

}  // namespace secddr::crypto
