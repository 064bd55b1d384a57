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

#ifndef SECDDR_STATS_REPORT_H_
#define SECDDR_STATS_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "secddr/ctrl/system.h"

namespace secddr::stats {

struct RunReport {
  std::string scheme;
  std::uint64_t seed = 0;
  std::string config_hash;  // 16 hex digits, FNV-1a 64 of the config echo
  std::uint64_t trace_events = 0;

  // Processor cycles unless named otherwise.
  std::uint64_t total_cycles = 0;
  std::uint64_t total_bus_cycles = 0;
  std::uint64_t demand_reads = 0;
  std::uint64_t demand_writes = 0;
  std::uint64_t metadata_reads = 0;
  std::uint64_t metadata_writes = 0;
  std::uint64_t metadata_cache_hits = 0;
  std::uint64_t metadata_cache_misses = 0;
  double metadata_hit_rate = 0;
  double read_latency_avg = 0;
  std::uint64_t read_latency_p50 = 0;
  std::uint64_t read_latency_p95 = 0;
  std::uint64_t read_latency_p99 = 0;
  std::uint64_t bus_busy_cycles = 0;  // data-bus bus cycles, both directions
  std::uint64_t read_bus_cycles = 0;
  std::uint64_t write_bus_cycles = 0;
  std::uint64_t verdict_pass = 0;
  std::uint64_t verdict_mac_fail = 0;
  std::uint64_t ewcrc_alerts = 0;
  std::uint64_t channel_rejects = 0;
  std::uint64_t metadata_fails = 0;
  std::uint64_t write_retries = 0;
  std::uint64_t write_failures = 0;
  std::uint64_t activates = 0;
  std::uint64_t column_commands = 0;

  nlohmann::ordered_json config;  // full echo
  std::optional<nlohmann::ordered_json> ledger;
};

std::string ConfigHash(const nlohmann::ordered_json& config);

// Bus cycles to processor cycles, rounded up.
std::uint64_t ToCpuCycles(std::uint64_t bus_cycles, unsigned cpu_mhz,
                          unsigned bus_mhz);

// Nearest-rank percentile (0 < p <= 100); 0 for an empty sample.
std::uint64_t Percentile(std::vector<std::uint64_t> sample, double p);

RunReport BuildReport(const ctrl::System& sys,
                      const nlohmann::ordered_json& config,
                      std::uint64_t trace_events);

nlohmann::ordered_json ToJson(const RunReport& r);
std::string ToJsonText(const RunReport& r);
std::string CsvHeader();
std::string CsvRow(const RunReport& r);

}  // namespace secddr::stats

#endif  // SECDDR_STATS_REPORT_H_
