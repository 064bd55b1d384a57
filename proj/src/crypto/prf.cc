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

#include "secddr/crypto/prf.h"

#include <array>
#include <bit>

namespace secddr::crypto {
namespace {

struct SipState {
  std::uint64_t v0, v1, v2, v3;

  void Round() {
    v0 += v1;
    v1 = std::rotl(v1, 13);
    v1 ^= v0;
    v0 = std::rotl(v0, 32);
    v2 += v3;
    v3 = std::rotl(v3, 16);
    v3 ^= v2;
    v0 += v3;
    v3 = std::rotl(v3, 21);
    v3 ^= v0;
    v2 += v1;
    v1 = std::rotl(v1, 17);
    v1 ^= v2;
    v2 = std::rotl(v2, 32);
  }

  void Compress(std::uint64_t m) {
    v3 ^= m;
    Round();
    Round();
    v0 ^= m;
  }
};

SipState Absorb(const SecretKey& key, std::span<const std::uint8_t> msg,
                bool wide) {
  const std::uint64_t k0 = key.word0();
  const std::uint64_t k1 = key.word1();
  SipState s{0x736f6d6570736575ULL ^ k0, 0x646f72616e646f6dULL ^ k1,
             0x6c7967656e657261ULL ^ k0, 0x7465646279746573ULL ^ k1};
  if (wide) s.v1 ^= 0xee;

  const std::size_t n = msg.size();
  const std::size_t full = n & ~std::size_t{7};
  for (std::size_t i = 0; i < full; i += 8) s.Compress(LoadLe64(&msg[i]));

  std::uint64_t last = static_cast<std::uint64_t>(n & 0xff) << 56;
  for (std::size_t i = full; i < n; ++i) {
    last |= static_cast<std::uint64_t>(msg[i]) << (8 * (i - full));
  }
  s.Compress(last);
  return s;
}

std::uint64_t Finish(SipState& s, std::uint64_t marker) {
  s.v2 ^= marker;
  for (int i = 0; i < 4; ++i) s.Round();
  return s.v0 ^ s.v1 ^ s.v2 ^ s.v3;
}

}  // namespace

Block128 SipHash128(const SecretKey& key, std::span<const std::uint8_t> msg) {
  SipState s = Absorb(key, msg, /*wide=*/true);
  Block128 out;
  out.lo = Finish(s, 0xee);
  s.v1 ^= 0xdd;
  for (int i = 0; i < 4; ++i) s.Round();
  out.hi = s.v0 ^ s.v1 ^ s.v2 ^ s.v3;
  return out;
}

std::uint64_t SipHash64(const SecretKey& key,
                        std::span<const std::uint8_t> msg) {
  SipState s = Absorb(key, msg, /*wide=*/false);
  return Finish(s, 0xff);
}

Block128 PrfBlock(const SecretKey& key, Domain tag,
                  std::span<const std::uint64_t> inputs) {
  if (inputs.size() > kMaxPrfWords) {
    throw ContractError("PrfBlock: more than 16 input words");
  }
  std::array<std::uint8_t, 8 * (kMaxPrfWords + 1)> buf;
  StoreLe64(buf.data(), static_cast<std::uint64_t>(tag));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    StoreLe64(buf.data() + 8 * (i + 1), inputs[i]);
  }
  return SipHash128(key, std::span<const std::uint8_t>(
                             buf.data(), 8 * (inputs.size() + 1)));
}

}  // namespace secddr::crypto
