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

#ifndef SECDDR_ADVERSARY_FORGERY_H_
#define SECDDR_ADVERSARY_FORGERY_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "secddr/adversary/episodes.h"
#include "secddr/dram/address.h"

namespace secddr::adversary {

// Write-redirection forgery against one ECC chip: the processor frames a
// write, the attacker moves it to a random other row, the chip checks the
// encrypted eWCRC against the row it received. A legitimate read between
// attempts moves the transaction counter on. Expected acceptance 2^-16.
class EwcrcForgeryBench {
 public:
  EwcrcForgeryBench(const dram::Geometry& geometry, std::uint64_t seed);
  ~EwcrcForgeryBench();

  // One redirected write; true if the chip stored it.
  bool Attempt();

  RateEstimate Rate(std::uint64_t trials);
  // Attempts up to and including the first acceptance.
  std::uint64_t AttemptsToAcceptance();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Attempts-to-first-acceptance of `episodes` independent brute-force runs.
std::vector<std::uint64_t> EwcrcBruteForce(const dram::Geometry& geometry,
                                           unsigned episodes,
                                           std::uint64_t seed);

}  // namespace secddr::adversary

#endif  // SECDDR_ADVERSARY_FORGERY_H_
