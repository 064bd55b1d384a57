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

#include "secddr/schemes/tree_geometry.h"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace secddr::schemes {

std::uint64_t TreeGeometry::memory_lines() const {
  return std::accumulate(level_sizes.begin(),
                         level_sizes.begin() +
                             static_cast<std::ptrdiff_t>(memory_levels()),
                         std::uint64_t{0});
}

TreeGeometry MakeTreeGeometry(std::uint64_t capacity_bytes, unsigned arity,
                              unsigned per_leaf) {
  const std::uint64_t lines = capacity_bytes / dram::Geometry::kLineBytes;
  if (capacity_bytes % dram::Geometry::kLineBytes != 0 ||
      !std::has_single_bit(lines)) {
    throw std::invalid_argument(
        "protected capacity must be a power-of-two number of lines");
  }
  if (per_leaf == 0 || lines % per_leaf != 0) {
    throw std::invalid_argument("per_leaf must divide the line count");
  }
  if (arity == 1) throw std::invalid_argument("tree arity 1 never converges");

  TreeGeometry t{capacity_bytes, arity, per_leaf, {lines / per_leaf}};
  if (arity == 0) return t;
  while (t.level_sizes.back() > 1) {
    t.level_sizes.push_back((t.level_sizes.back() + arity - 1) / arity);
  }
  if (t.level_sizes.size() == 1) t.level_sizes.push_back(1);
  return t;
}

MetadataLayout::MetadataLayout(TreeGeometry tree) : tree_(std::move(tree)) {
  for (std::size_t l = 0; l < tree_.memory_levels(); ++l) {
    base_.push_back(total_);
    total_ += tree_.level_sizes[l];
  }
}

std::vector<std::uint64_t> MetadataLayout::PathOf(
    std::uint64_t data_line) const {
  std::vector<std::uint64_t> path;
  path.reserve(levels());
  std::uint64_t node = LeafOf(data_line);
  for (std::size_t l = 0; l < levels(); ++l) {
    path.push_back(MetaIndex(l, node));
    if (tree_.arity > 0) node = ParentOf(node);
  }
  return path;
}

std::uint32_t MetadataLayout::RowsNeeded(const dram::Geometry& g) const {
  const std::uint64_t slice = g.lines_per_row_slice();
  return static_cast<std::uint32_t>((total_ + slice - 1) / slice);
}

MetadataLayout LayoutFor(const SchemeTraits& traits,
                         std::uint64_t capacity_bytes) {
  if (!traits.has_metadata) return MetadataLayout();
  return MetadataLayout(
      MakeTreeGeometry(capacity_bytes, traits.arity, traits.per_leaf));
}

}  // namespace secddr::schemes
