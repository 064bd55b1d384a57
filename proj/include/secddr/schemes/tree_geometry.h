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

#ifndef SECDDR_SCHEMES_TREE_GEOMETRY_H_
#define SECDDR_SCHEMES_TREE_GEOMETRY_H_

#include <cstdint>
#include <vector>

#include "secddr/dram/address.h"
#include "secddr/schemes/scheme.h"

namespace secddr::schemes {

// Node counts per level, leaf first. With a tree (arity > 0) the last level
// has exactly one node, the on-chip root, which never causes traffic.
struct TreeGeometry {
  std::uint64_t protected_bytes = 0;
  unsigned arity = 0;
  unsigned per_leaf = 0;
  std::vector<std::uint64_t> level_sizes;

  bool has_root() const { return arity > 0; }
  // Levels that live in DRAM, i.e. the lines a cold walk fetches.
  std::size_t memory_levels() const {
    return has_root() ? level_sizes.size() - 1 : level_sizes.size();
  }
  std::uint64_t memory_lines() const;
};

// Throws std::invalid_argument unless capacity is a power-of-two multiple of
// 64 bytes and per_leaf divides the line count.
TreeGeometry MakeTreeGeometry(std::uint64_t capacity_bytes, unsigned arity,
                              unsigned per_leaf);

// Placement of the memory-resident metadata levels inside the reserved
// metadata rows, leaf level first.
class MetadataLayout {
 public:
  MetadataLayout() = default;
  explicit MetadataLayout(TreeGeometry tree);

  const TreeGeometry& tree() const { return tree_; }
  std::size_t levels() const { return base_.size(); }
  std::uint64_t total_lines() const { return total_; }

  // Leaf-level node covering a data line.
  std::uint64_t LeafOf(std::uint64_t data_line) const {
    return data_line / tree_.per_leaf;
  }
  std::uint64_t ParentOf(std::uint64_t node) const {
    return node / tree_.arity;
  }
  // Flat metadata-region index of node `node` on `level`.
  std::uint64_t MetaIndex(std::size_t level, std::uint64_t node) const {
    return base_[level] + node;
  }

  // Metadata indices on the leaf-to-root path of a data line, excluding the
  // on-chip root.
  std::vector<std::uint64_t> PathOf(std::uint64_t data_line) const;

  // Reserved rows needed for the metadata at a given geometry.
  std::uint32_t RowsNeeded(const dram::Geometry& g) const;

 private:
  TreeGeometry tree_;
  std::vector<std::uint64_t> base_;
  std::uint64_t total_ = 0;
};

// Layout for a scheme protecting `capacity_bytes`; empty when the scheme
// keeps no metadata in memory.
MetadataLayout LayoutFor(const SchemeTraits& traits,
                         std::uint64_t capacity_bytes);

}  // namespace secddr::schemes

#endif  // SECDDR_SCHEMES_TREE_GEOMETRY_H_
