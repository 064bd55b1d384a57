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

#include <gtest/gtest.h>

#include <algorithm>
#include <list>
#include <random>
#include <set>
#include <vector>

#include "secddr/schemes/metadata_cache.h"
#include "secddr/schemes/policy.h"
#include "secddr/schemes/scheme.h"
#include "secddr/schemes/tree_geometry.h"

namespace secddr::schemes {
namespace {

constexpr std::uint64_t k16GiB = 16ull << 30;

// Independent level sizes: ceil-divide until one node is left on chip.
std::vector<std::uint64_t> OracleLevels(std::uint64_t bytes, unsigned per_leaf,
                                        unsigned arity) {
  std::vector<std::uint64_t> levels;
  std::uint64_t n = (bytes / 64 + per_leaf - 1) / per_leaf;
  levels.push_back(n);
  while (arity > 0 && n > 1) {
    n = (n + arity - 1) / arity;
    levels.push_back(n);
  }
  // A single leaf still sits below an on-chip root.
  if (arity > 0 && levels.size() == 1) levels.push_back(1);
  return levels;
}

TEST(TreeGeometry, SixteenGibShapes) {
  const TreeGeometry t64 = MakeTreeGeometry(k16GiB, 64, 64);
  EXPECT_EQ(t64.level_sizes,
            (std::vector<std::uint64_t>{1u << 22, 1u << 16, 1u << 10, 16, 1}));
  EXPECT_EQ(t64.memory_levels(), 4u);
  EXPECT_EQ(MakeTreeGeometry(k16GiB, 128, 128).memory_levels(), 3u);
  EXPECT_EQ(MakeTreeGeometry(k16GiB, 8, 8).memory_levels(), 9u);
  const TreeGeometry ctr = MakeTreeGeometry(k16GiB, 0, 64);
  EXPECT_FALSE(ctr.has_root());
  EXPECT_EQ(ctr.memory_levels(), 1u);
}

TEST(TreeGeometry, MatchesCeilDivideOracle) {
  for (unsigned log_bytes = 12; log_bytes <= 40; ++log_bytes) {
    for (unsigned arity : {2u, 4u, 8u, 16u, 64u, 128u}) {
      for (unsigned per_leaf : {8u, 64u, 128u}) {
        if ((std::uint64_t{1} << log_bytes) / 64 % per_leaf != 0) continue;
        const auto g =
            MakeTreeGeometry(std::uint64_t{1} << log_bytes, arity, per_leaf);
        EXPECT_EQ(g.level_sizes,
                  OracleLevels(std::uint64_t{1} << log_bytes, per_leaf, arity))
            << log_bytes << " " << arity << " " << per_leaf;
      }
    }
  }
}

TEST(TreeGeometry, RejectsBadCapacity) {
  EXPECT_THROW(MakeTreeGeometry(1000, 8, 8), std::invalid_argument);
  EXPECT_THROW(MakeTreeGeometry(64 * 100, 8, 64), std::invalid_argument);
}

TEST(MetadataLayout, PathsAreDistinctAndShared) {
  const MetadataLayout layout(MakeTreeGeometry(1ull << 30, 8, 8));
  std::mt19937_64 rng(1);
  const std::uint64_t lines = (1ull << 30) / 64;
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t line = rng() % lines;
    const auto path = layout.PathOf(line);
    ASSERT_EQ(path.size(), layout.tree().memory_levels());
    EXPECT_EQ(path.front(), layout.MetaIndex(0, layout.LeafOf(line)));
    EXPECT_EQ(std::set<std::uint64_t>(path.begin(), path.end()).size(),
              path.size());
    for (std::uint64_t m : path) EXPECT_LT(m, layout.total_lines());
    // Lines in the same leaf share the whole path.
    const std::uint64_t sibling = line ^ 1;
    EXPECT_EQ(layout.PathOf(sibling), path);
  }
}

TEST(MetadataLayout, ReservedRowsHoldEverything) {
  dram::Geometry g;
  for (SchemeId id : kAllSchemes) {
    const MetadataLayout layout = LayoutFor(TraitsOf(id), g.capacity_bytes());
    const std::uint64_t rows = layout.RowsNeeded(g);
    EXPECT_GE(rows * g.lines_per_row_slice(), layout.total_lines())
        << SchemeName(id);
    if (layout.total_lines() == 0) EXPECT_EQ(rows, 0u);
  }
}

// Reference LRU: one list per set, most recent at the front.
class LruOracle {
 public:
  LruOracle(std::uint64_t sets, unsigned ways) : sets_(sets), ways_(ways), lists_(sets) {}
  bool Access(std::uint64_t index) {
    auto& l = lists_[index % sets_];
    auto it = std::find(l.begin(), l.end(), index);
    const bool hit = it != l.end();
    if (hit) l.erase(it);
    l.push_front(index);
    if (l.size() > ways_) l.pop_back();
    return hit;
  }

 private:
  std::uint64_t sets_;
  unsigned ways_;
  std::vector<std::list<std::uint64_t>> lists_;
};

TEST(MetadataCache, AgreesWithLruOracle) {
  MetadataCache cache(4096, 64, 4);  // 16 sets of 4
  LruOracle oracle(16, 4);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50000; ++i) {
    const std::uint64_t idx = rng() % 200;
    ASSERT_EQ(cache.Access(idx, false).hit, oracle.Access(idx)) << i;
  }
  EXPECT_EQ(cache.hits() + cache.misses(), 50000u);
}

TEST(MetadataCache, ReportsDirtyVictimsOnly) {
  MetadataCache cache(128, 64, 2);  // one set, two ways
  EXPECT_FALSE(cache.Access(1, true).hit);
  EXPECT_FALSE(cache.Access(2, false).hit);
  const auto r = cache.Access(3, false);  // evicts 1 (dirty)
  ASSERT_TRUE(r.evicted.has_value());
  EXPECT_EQ(r.evicted->index, 1u);
  EXPECT_FALSE(cache.Access(4, false).evicted.has_value());  // evicts 2 (clean)
}

TEST(MetadataCache, ZeroCapacityAlwaysMisses) {
  MetadataCache cache(0);
  EXPECT_FALSE(cache.enabled());
  for (int i = 0; i < 10; ++i) {
    EXPECT_FALSE(cache.Access(7, true).hit);
    EXPECT_FALSE(cache.Contains(7));
  }
  EXPECT_EQ(cache.misses(), 10u);
}

TEST(SchemePolicy, ColdWalkFetchesWholePathThenStopsAtLeaf) {
  const SchemePolicy policy(TraitsOf(SchemeId::kTree64), k16GiB);
  MetadataCache cache(131072);
  const AccessPlan cold = policy.PlanDemandRead(12345, cache);
  EXPECT_EQ(cold.fetches, policy.layout().PathOf(12345));
  EXPECT_FALSE(cold.stopped_at.has_value());
  const AccessPlan warm = policy.PlanDemandRead(12345, cache);
  EXPECT_TRUE(warm.fetches.empty());
  EXPECT_EQ(warm.stopped_at, policy.layout().PathOf(12345).front());
}

TEST(SchemePolicy, XtsSchemesPlanNothing) {
  for (SchemeId id : {SchemeId::kEncryptXts, SchemeId::kSecddrXts,
                      SchemeId::kInvisimemReal, SchemeId::kInvisimemUnreal}) {
    const SchemePolicy policy(TraitsOf(id), k16GiB);
    MetadataCache cache(131072);
    EXPECT_TRUE(policy.PlanDemandRead(99, cache).fetches.empty());
    const AccessPlan w = policy.PlanDemandWrite(99, cache);
    EXPECT_TRUE(w.fetches.empty());
    EXPECT_TRUE(w.writebacks.empty());
  }
}

TEST(SchemePolicy, UncachedWritesWriteThroughEveryUpdatedLine) {
  const SchemePolicy policy(TraitsOf(SchemeId::kMerkle8), k16GiB);
  MetadataCache cache(0);
  const AccessPlan w = policy.PlanDemandWrite(777, cache);
  EXPECT_EQ(w.updated, policy.layout().PathOf(777));
  EXPECT_EQ(w.writebacks, w.updated);
  EXPECT_EQ(w.fetches, w.updated);
}

TEST(SchemeTraits, NamesRoundTripAndBurstRules) {
  for (SchemeId id : kAllSchemes) {
    EXPECT_EQ(ParseScheme(SchemeName(id)), id);
    const SchemeTraits t = TraitsOf(id);
    const bool secddr = t.channel == ChannelKind::kSecddr;
    EXPECT_EQ(t.write_burst_cycles.has_value(), secddr);
    if (secddr) EXPECT_EQ(*t.write_burst_cycles, 5u);
  }
  EXPECT_EQ(TraitsOf(SchemeId::kInvisimemReal).bus_mhz, 1200u);
  EXPECT_FALSE(TraitsOf(SchemeId::kInvisimemUnreal).bus_mhz.has_value());
  EXPECT_FALSE(ParseScheme("secddr"));
}

}  // namespace
}  // namespace secddr::schemes
