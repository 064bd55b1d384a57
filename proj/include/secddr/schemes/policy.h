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

#ifndef SECDDR_SCHEMES_POLICY_H_
#define SECDDR_SCHEMES_POLICY_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "secddr/schemes/metadata_cache.h"
#include "secddr/schemes/scheme.h"
#include "secddr/schemes/tree_geometry.h"

namespace secddr::schemes {

// Metadata work caused by one demand access. Indices are metadata-region
// line indices.
struct AccessPlan {
  // Lines missing on chip, leaf first. They are fetched in parallel.
  std::vector<std::uint64_t> fetches;
  // Where the walk stopped on an on-chip copy, if it did.
  std::optional<std::uint64_t> stopped_at;
  // Lines to write to memory because of this access: dirty evictions, and
  // with caching disabled every updated line (write-through).
  std::vector<std::uint64_t> writebacks;
  // Lines whose content changes (writes only).
  std::vector<std::uint64_t> updated;
  // Crypto latency on the access's critical path, processor cycles.
  unsigned crypto_cpu_cycles = 0;
};

class SchemePolicy {
 public:
  SchemePolicy(const SchemeTraits& traits, std::uint64_t protected_bytes,
               unsigned crypt_mac_cpu_cycles = 40);

  const SchemeTraits& traits() const { return traits_; }
  const MetadataLayout& layout() const { return layout_; }

  // Walks leaf to root and stops at the first cached line. XTS schemes
  // return an empty plan.
  AccessPlan PlanDemandRead(std::uint64_t data_line,
                            MetadataCache& cache) const;
  // Same walk; every line touched is updated and left dirty.
  AccessPlan PlanDemandWrite(std::uint64_t data_line,
                             MetadataCache& cache) const;

 private:
  AccessPlan Walk(std::uint64_t data_line, MetadataCache& cache,
                  bool is_write) const;

  SchemeTraits traits_;
  MetadataLayout layout_;
  unsigned crypt_mac_cpu_cycles_;
};

}  // namespace secddr::schemes

#endif  // SECDDR_SCHEMES_POLICY_H_
