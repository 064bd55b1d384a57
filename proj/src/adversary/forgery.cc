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

#include "secddr/adversary/forgery.h"

#include <random>

#include "secddr/attest/identity.h"
#include "secddr/chip/ecc_chip.h"
#include "secddr/ctrl/host_channel.h"
#include "secddr/dram/geometry.h"
#include "secddr/dram/storage.h"
#include "secddr/stats/trace.h"

namespace secddr::adversary {

struct EwcrcForgeryBench::Impl {
  Impl(const dram::Geometry& g, std::uint64_t seed)
      : geometry(g),
        rng(seed),
        chip(0,
             attest::MakeIdentity(
                 attest::CertificateAuthority::FromSeed(
                     attest::SeedFrom(seed, "forgery-ca")),
                 attest::SeedFrom(seed, "forgery-ek"), "bench", 1),
             g, crypto::MacWidth(64)),
        host(schemes::ChannelKind::kSecddr, g, crypto::MacWidth(64)),
        storage(g) {
    const std::uint64_t lo = rng();
    const std::uint64_t hi = rng();
    const crypto::SecretKey key = crypto::SecretKey::FromWords(lo, hi);
    const crypto::TransactionCounter c{rng()};
    chip.InstallEpoch(key, c);
    host.InstallEpoch(0, key, c);
  }

  dram::Geometry geometry;
  std::mt19937_64 rng;
  chip::EccChip chip;
  ctrl::HostChannel host;
  dram::DramStorage storage;
  std::uint64_t seq = 0;
};

EwcrcForgeryBench::EwcrcForgeryBench(const dram::Geometry& geometry,
                                     std::uint64_t seed)
    : impl_(std::make_unique<Impl>(geometry, seed)) {}

EwcrcForgeryBench::~EwcrcForgeryBench() = default;

bool EwcrcForgeryBench::Attempt() {
  Impl& s = *impl_;
  const dram::Geometry& g = s.geometry;
  dram::PhysicalAddress target =
      dram::AddressFromLine(stats::BoundedDraw(s.rng, g.data_lines()), g);
  target.rank = 0;
  const crypto::Line data = stats::PayloadFor(target.Pack(), s.seq++);
  const dram::WriteBurst burst = s.host.FrameWrite(target, data, s.rng());

  dram::PhysicalAddress moved = target;
  while (moved.row == target.row) {
    moved.row =
        static_cast<std::uint32_t>(stats::BoundedDraw(s.rng, g.total_rows()));
  }
  const bool accepted = s.chip.HandleWrite(moved, burst, s.storage) ==
                        chip::WriteOutcome::kStored;
  if (accepted) {
    s.host.CommitWrite(0);
  } else {
    s.chip.ClearAlert();
  }
  // Unrelated traffic before the next attempt.
  const dram::ReadBurst r = s.chip.HandleRead(target, s.storage);
  (void)s.host.OpenRead(target, r);
  return accepted;
}

RateEstimate EwcrcForgeryBench::Rate(std::uint64_t trials) {
  RateEstimate est;
  est.expected = 1.0 / 65536.0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    ++est.trials;
    if (Attempt()) ++est.accepts;
  }
  return est;
}

std::uint64_t EwcrcForgeryBench::AttemptsToAcceptance() {
  std::uint64_t n = 1;
  while (!Attempt()) ++n;
  return n;
}

std::vector<std::uint64_t> EwcrcBruteForce(const dram::Geometry& geometry,
                                           unsigned episodes,
                                           std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  out.reserve(episodes);
  std::mt19937_64 seeds(seed);
  for (unsigned e = 0; e < episodes; ++e) {
    EwcrcForgeryBench bench(geometry, seeds());
    out.push_back(bench.AttemptsToAcceptance());
  }
  return out;
}

}  // namespace secddr::adversary
