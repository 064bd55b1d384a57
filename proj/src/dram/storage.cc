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

#include "secddr/dram/storage.h"

#include "secddr/dram/geometry.h"

namespace secddr::dram {

DramStorage::DramStorage(const Geometry& geometry) : geometry_(geometry) {}

std::uint64_t DramStorage::Key(const PhysicalAddress& addr) const {
  if (!geometry_.Contains(addr)) {
    throw AddressError("storage access outside geometry: " + addr.ToString());
  }
  return LineIndex(addr, geometry_);
}

SecureLine DramStorage::Read(const PhysicalAddress& addr) const {
  auto it = lines_.find(Key(addr));
  if (it != lines_.end()) return it->second;
  if (fill_ && *fill_) return (*fill_)(addr);
  return SecureLine{};
}

void DramStorage::Write(const PhysicalAddress& addr, const SecureLine& line) {
  lines_[Key(addr)] = line;
}

SecureLine& DramStorage::Mutable(const PhysicalAddress& addr) {
  const std::uint64_t key = Key(addr);
  auto it = lines_.find(key);
  if (it == lines_.end()) it = lines_.emplace(key, Read(addr)).first;
  return it->second;
}

void DramStorage::Clear(FillFunction fill) {
  lines_.clear();
  fill_ = std::make_shared<const FillFunction>(std::move(fill));
}

void DramStorage::Restore(const StorageImage& image) {
  lines_ = image.lines;
  fill_ = image.fill;
}

}  // namespace secddr::dram
