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

#ifndef SECDDR_DRAM_STORAGE_H_
#define SECDDR_DRAM_STORAGE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>

#include "secddr/crypto/types.h"
#include "secddr/dram/address.h"

namespace secddr::dram {

// One line as held by the module: 64 data bytes plus the 8-byte ECC lane.
struct SecureLine {
  crypto::Line data{};
  std::uint64_t ecc_meta = 0;
  friend bool operator==(const SecureLine&, const SecureLine&) = default;
};

static_assert(sizeof(crypto::Line) + sizeof(std::uint64_t) == 72);

// Content of lines never written since the last clear.
using FillFunction = std::function<SecureLine(const PhysicalAddress&)>;

struct StorageImage {
  std::unordered_map<std::uint64_t, SecureLine> lines;
  std::shared_ptr<const FillFunction> fill;
};

// Sparse functional backing store with last-writer-wins semantics.
class DramStorage {
 public:
  explicit DramStorage(const Geometry& geometry);

  SecureLine Read(const PhysicalAddress& addr) const;
  void Write(const PhysicalAddress& addr, const SecureLine& line);
  // Materialises the line and returns it for in-place tampering.
  SecureLine& Mutable(const PhysicalAddress& addr);

  // Drops every written line; subsequent reads return `fill(addr)`, or an
  // all-zero line when `fill` is empty.
  void Clear(FillFunction fill);

  StorageImage Snapshot() const { return StorageImage{lines_, fill_}; }
  void Restore(const StorageImage& image);

  std::size_t materialized_lines() const { return lines_.size(); }
  const Geometry& geometry() const { return geometry_; }

 private:
  std::uint64_t Key(const PhysicalAddress& addr) const;

  Geometry geometry_;
  std::unordered_map<std::uint64_t, SecureLine> lines_;
  std::shared_ptr<const FillFunction> fill_;
};

}  // namespace secddr::dram

#endif  // SECDDR_DRAM_STORAGE_H_
