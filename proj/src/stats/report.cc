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

#include "secddr/stats/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "secddr/schemes/scheme.h"

namespace secddr::stats {
namespace {

// One place lists the scalar fields so JSON and CSV stay in step.
template <typename F>
void ForEachField(const RunReport& r, F&& f) {
  f("scheme", nlohmann::ordered_json(r.scheme));
  f("seed", nlohmann::ordered_json(r.seed));
  f("config_hash", nlohmann::ordered_json(r.config_hash));
  f("trace_events", nlohmann::ordered_json(r.trace_events));
  f("total_cycles", nlohmann::ordered_json(r.total_cycles));
  f("total_bus_cycles", nlohmann::ordered_json(r.total_bus_cycles));
  f("demand_reads", nlohmann::ordered_json(r.demand_reads));
  f("demand_writes", nlohmann::ordered_json(r.demand_writes));
  f("metadata_reads", nlohmann::ordered_json(r.metadata_reads));
  f("metadata_writes", nlohmann::ordered_json(r.metadata_writes));
  f("metadata_cache_hits", nlohmann::ordered_json(r.metadata_cache_hits));
  f("metadata_cache_misses", nlohmann::ordered_json(r.metadata_cache_misses));
  f("metadata_hit_rate", nlohmann::ordered_json(r.metadata_hit_rate));
  f("read_latency_avg", nlohmann::ordered_json(r.read_latency_avg));
  f("read_latency_p50", nlohmann::ordered_json(r.read_latency_p50));
  f("read_latency_p95", nlohmann::ordered_json(r.read_latency_p95));
  f("read_latency_p99", nlohmann::ordered_json(r.read_latency_p99));
  f("bus_busy_cycles", nlohmann::ordered_json(r.bus_busy_cycles));
  f("read_bus_cycles", nlohmann::ordered_json(r.read_bus_cycles));
  f("write_bus_cycles", nlohmann::ordered_json(r.write_bus_cycles));
  f("verdict_pass", nlohmann::ordered_json(r.verdict_pass));
  f("verdict_mac_fail", nlohmann::ordered_json(r.verdict_mac_fail));
  f("ewcrc_alerts", nlohmann::ordered_json(r.ewcrc_alerts));
  f("channel_rejects", nlohmann::ordered_json(r.channel_rejects));
  f("metadata_fails", nlohmann::ordered_json(r.metadata_fails));
  f("write_retries", nlohmann::ordered_json(r.write_retries));
  f("write_failures", nlohmann::ordered_json(r.write_failures));
  f("activates", nlohmann::ordered_json(r.activates));
  f("column_commands", nlohmann::ordered_json(r.column_commands));
}

std::string CsvCell(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v.get<double>());
    return buf;
  }
  return v.dump();
}

}  // namespace

std::string ConfigHash(const nlohmann::ordered_json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t ToCpuCycles(std::uint64_t bus_cycles, unsigned cpu_mhz,
                          unsigned bus_mhz) {
  return (bus_cycles * cpu_mhz + bus_mhz - 1) / bus_mhz;
}

std::uint64_t Percentile(std::vector<std::uint64_t> sample, double p) {
  if (sample.empty()) return 0;
  auto rank = static_cast<std::size_t>(
      std::ceil(p / 100.0 * static_cast<double>(sample.size())));
  rank = std::clamp<std::size_t>(rank, 1, sample.size());
  std::nth_element(sample.begin(), sample.begin() + (rank - 1), sample.end());
  return sample[rank - 1];
}

RunReport BuildReport(const ctrl::System& sys,
                      const nlohmann::ordered_json& config,
                      std::uint64_t trace_events) {
  const ctrl::ControllerStats& st = sys.controller().stats();
  const unsigned cpu = sys.config().controller.cpu_mhz;
  const unsigned bus = sys.timing().bus_mhz;
  RunReport r;
  r.scheme = std::string(schemes::SchemeName(sys.config().scheme));
  r.seed = sys.config().seed;
  r.config = config;
  r.config_hash = ConfigHash(config);
  r.trace_events = trace_events;
  const auto last = static_cast<std::uint64_t>(std::max<dram::Cycle>(0, st.last_completion));
  r.total_bus_cycles = last;
  r.total_cycles = ToCpuCycles(last, cpu, bus);
  r.demand_reads = st.demand_reads;
  r.demand_writes = st.demand_writes;
  r.metadata_reads = st.metadata_reads;
  r.metadata_writes = st.metadata_writes;
  r.metadata_cache_hits = sys.controller().metadata_cache().hits();
  r.metadata_cache_misses = sys.controller().metadata_cache().misses();
  const std::uint64_t lookups = r.metadata_cache_hits + r.metadata_cache_misses;
  r.metadata_hit_rate =
      lookups == 0 ? 0.0 : static_cast<double>(r.metadata_cache_hits) / lookups;
  const auto& lat = st.read_latency_cpu;
  if (!lat.empty()) {
    r.read_latency_avg =
        static_cast<double>(std::accumulate(lat.begin(), lat.end(), std::uint64_t{0})) /
        static_cast<double>(lat.size());
  }
  r.read_latency_p50 = Percentile(lat, 50);
  r.read_latency_p95 = Percentile(lat, 95);
  r.read_latency_p99 = Percentile(lat, 99);
  r.read_bus_cycles = sys.channel().read_bus_cycles();
  r.write_bus_cycles = sys.channel().write_bus_cycles();
  r.bus_busy_cycles = r.read_bus_cycles + r.write_bus_cycles;
  r.verdict_pass = st.verdict_pass;
  r.verdict_mac_fail = st.verdict_mac_fail;
  r.ewcrc_alerts = st.ewcrc_alerts;
  r.channel_rejects = st.channel_rejects;
  r.metadata_fails = st.metadata_fails;
  r.write_retries = st.write_retries;
  r.write_failures = st.write_failures;
  r.activates = st.activates;
  r.column_commands = st.column_commands;
  return r;
}

nlohmann::ordered_json ToJson(const RunReport& r) {
  nlohmann::ordered_json j;
  ForEachField(r, [&](const char* name, nlohmann::ordered_json v) {
    j[name] = std::move(v);
  });
  j["config"] = r.config;
  if (r.ledger) j["ledger"] = *r.ledger;
  return j;
}

std::string ToJsonText(const RunReport& r) { return ToJson(r).dump(2) + "\n"; }

std::string CsvHeader() {
  std::string out;
  ForEachField(RunReport{}, [&](const char* name, const nlohmann::ordered_json&) {
    if (!out.empty()) out += ',';
    out += name;
  });
  return out + "\n";
}

std::string CsvRow(const RunReport& r) {
  std::string out;
  bool first = true;
  ForEachField(r, [&](const char*, const nlohmann::ordered_json& v) {
    if (!first) out += ',';
    first = false;
    out += CsvCell(v);
  });
  return out + "\n";
}

}  // namespace secddr::stats
