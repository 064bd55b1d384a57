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

#include "secddr/crypto/line_cipher.h"

#include <array>

#include "secddr/crypto/prf.h"

namespace secddr::crypto {
namespace {

constexpr int kSubBlocks = 4;

// Byte i of a sub-block moves to position (7i + 3) mod 16.
constexpr std::array<std::uint8_t, 16> MakePerm(bool inverse) {
  std::array<std::uint8_t, 16> p{};
  for (int i = 0; i < 16; ++i) {
    const int to = (7 * i + 3) % 16;
    if (inverse) {
      p[to] = static_cast<std::uint8_t>(i);
    } else {
      p[i] = static_cast<std::uint8_t>(to);
    }
  }
  return p;
}

constexpr auto kForward = MakePerm(false);
constexpr auto kInverse = MakePerm(true);

std::array<std::uint8_t, 16> TweakBytes(const SecretKey& key,
                                        const dram::PhysicalAddress& addr,
                                        int sub_block) {
  Block128 t = PrfBlock(key, Domain::kXts,
                        {addr.Pack(), static_cast<std::uint64_t>(sub_block)});
  std::array<std::uint8_t, 16> out;
  StoreLe64(out.data(), t.lo);
  StoreLe64(out.data() + 8, t.hi);
  return out;
}

}  // namespace

Line XtsLineEncrypt(const SecretKey& key, const dram::PhysicalAddress& addr,
                    const Line& plaintext) {
  Line out{};
  for (int s = 0; s < kSubBlocks; ++s) {
    auto tweak = TweakBytes(key, addr, s);
    for (int i = 0; i < 16; ++i) {
      out[16 * s + kForward[i]] =
          static_cast<std::uint8_t>(plaintext[16 * s + i] ^ tweak[i]);
    }
    for (int i = 0; i < 16; ++i) out[16 * s + i] ^= tweak[i];
  }
  return out;
}

Line XtsLineDecrypt(const SecretKey& key, const dram::PhysicalAddress& addr,
                    const Line& ciphertext) {
  Line out{};
  for (int s = 0; s < kSubBlocks; ++s) {
    auto tweak = TweakBytes(key, addr, s);
    std::array<std::uint8_t, 16> mid;
    for (int i = 0; i < 16; ++i) {
      mid[i] = static_cast<std::uint8_t>(ciphertext[16 * s + i] ^ tweak[i]);
    }
    for (int i = 0; i < 16; ++i) {
      out[16 * s + kInverse[i]] = mid[i];
    }
    for (int i = 0; i < 16; ++i) out[16 * s + i] ^= tweak[i];
  }
  return out;
}

Line CtrLineEncrypt(const SecretKey& key, const dram::PhysicalAddress& addr,
                    std::uint64_t enc_counter, const Line& plaintext) {
  Line out = plaintext;
  for (int s = 0; s < kSubBlocks; ++s) {
    Block128 pad = PrfBlock(
        key, Domain::kCtr,
        {addr.Pack(), enc_counter, static_cast<std::uint64_t>(s)});
    std::uint8_t* p = out.data() + 16 * s;
    StoreLe64(p, LoadLe64(p) ^ pad.lo);
    StoreLe64(p + 8, LoadLe64(p + 8) ^ pad.hi);
  }
  return out;
}

}  // namespace secddr::crypto
