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

#ifndef SECDDR_SCHEMES_METADATA_CACHE_H_
#define SECDDR_SCHEMES_METADATA_CACHE_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace secddr::schemes {

// Set-associative, LRU, write-back cache of metadata lines keyed by their
// metadata-region index. A zero capacity disables caching entirely: every
// access misses and nothing is retained.
class MetadataCache {
 public:
  struct Victim {
    std::uint64_t index = 0;
    bool dirty = false;
  };
  struct Result {
    bool hit = false;
    std::optional<Victim> evicted;  // only reported when dirty
  };

  MetadataCache(std::uint64_t capacity_bytes, unsigned line_bytes = 64,
                unsigned ways = 8);

  // Looks up `index`, allocating it on a miss. `make_dirty` marks the
  // (possibly newly allocated) line dirty.
  Result Access(std::uint64_t index, bool make_dirty);
  bool Contains(std::uint64_t index) const;

  bool enabled() const { return sets_ > 0; }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }
  std::uint64_t capacity_lines() const { return sets_ * ways_; }
  unsigned ways() const { return ways_; }

 private:
  struct Way {
    std::uint64_t tag = 0;
    std::uint64_t last_use = 0;
    bool valid = false;
    bool dirty = false;
  };

  std::uint64_t sets_ = 0;
  unsigned ways_ = 0;
  std::vector<Way> ways_storage_;
  std::uint64_t clock_ = 0;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace secddr::schemes

#endif  // SECDDR_SCHEMES_METADATA_CACHE_H_
