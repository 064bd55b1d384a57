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

#include "secddr/schemes/policy.h"

namespace secddr::schemes {

SchemePolicy::SchemePolicy(const SchemeTraits& traits,
                           std::uint64_t protected_bytes,
                           unsigned crypt_mac_cpu_cycles)
    : traits_(traits),
      layout_(LayoutFor(traits, protected_bytes)),
      crypt_mac_cpu_cycles_(crypt_mac_cpu_cycles) {}

AccessPlan SchemePolicy::Walk(std::uint64_t data_line, MetadataCache& cache,
                              bool is_write) const {
  AccessPlan plan;
  plan.crypto_cpu_cycles = crypt_mac_cpu_cycles_;
  if (!traits_.has_metadata) return plan;

  for (std::uint64_t idx : layout_.PathOf(data_line)) {
    const MetadataCache::Result r = cache.Access(idx, is_write);
    if (r.evicted) plan.writebacks.push_back(r.evicted->index);
    if (is_write) {
      plan.updated.push_back(idx);
      if (!cache.enabled()) plan.writebacks.push_back(idx);
    }
    if (r.hit) {
      plan.stopped_at = idx;
      break;
    }
    plan.fetches.push_back(idx);
  }
  return plan;
}

AccessPlan SchemePolicy::PlanDemandRead(std::uint64_t data_line,
                                        MetadataCache& cache) const {
  return Walk(data_line, cache, /*is_write=*/false);
}

AccessPlan SchemePolicy::PlanDemandWrite(std::uint64_t data_line,
                                         MetadataCache& cache) const {
  return Walk(data_line, cache, /*is_write=*/true);
}

}  // namespace secddr::schemes
