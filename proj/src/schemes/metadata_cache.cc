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

#include "secddr/schemes/metadata_cache.h"

#include <stdexcept>

namespace secddr::schemes {

MetadataCache::MetadataCache(std::uint64_t capacity_bytes,
                             unsigned line_bytes, unsigned ways)
    : ways_(ways) {
  if (line_bytes == 0 || ways == 0) {
    throw std::invalid_argument("metadata cache: zero line size or ways");
  }
  const std::uint64_t lines = capacity_bytes / line_bytes;
  if (lines % ways != 0) {
    throw std::invalid_argument(
        "metadata cache: capacity must hold a whole number of sets");
  }
  sets_ = lines / ways;
  ways_storage_.resize(sets_ * ways_);
}

MetadataCache::Result MetadataCache::Access(std::uint64_t index,
                                            bool make_dirty) {
  Result r;
  if (!enabled()) {
    ++misses_;
    return r;
  }
  ++clock_;
  Way* set = &ways_storage_[(index % sets_) * ways_];
  Way* victim = &set[0];
  for (unsigned w = 0; w < ways_; ++w) {
    Way& way = set[w];
    if (way.valid && way.tag == index) {
      way.last_use = clock_;
      way.dirty |= make_dirty;
      ++hits_;
      r.hit = true;
      return r;
    }
    if (!way.valid) {
      if (victim->valid) victim = &way;
    } else if (victim->valid && way.last_use < victim->last_use) {
      victim = &way;
    }
  }
  ++misses_;
  if (victim->valid && victim->dirty) {
    r.evicted = Victim{victim->tag, true};
  }
  *victim = Way{index, clock_, true, make_dirty};
  return r;
}

bool MetadataCache::Contains(std::uint64_t index) const {
  if (!enabled()) return false;
  const Way* set = &ways_storage_[(index % sets_) * ways_];
  for (unsigned w = 0; w < ways_; ++w) {
    if (set[w].valid && set[w].tag == index) return true;
  }
  return false;
}

}  // namespace secddr::schemes
