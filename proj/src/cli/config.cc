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

#include "secddr/cli/config.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <set>

#include "secddr/schemes/scheme.h"

extern char** environ;

namespace secddr::cli {
namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

enum class Kind { kUint, kBool, kNumber, kString, kSize };

struct Field {
  const char* section;  // "" for top level
  const char* name;
  Kind kind;
  Json def;  // null: depends on the scheme
  std::uint64_t min = 0;
  std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  bool pow2 = false;
  std::vector<std::string> choices = {};
};

constexpr std::uint64_t kMax32 = 0xffffffffu;

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = [] {
    std::vector<std::string> scheme_names;
    for (auto id : schemes::kAllSchemes) {
      scheme_names.emplace_back(schemes::SchemeName(id));
    }
    const ctrl::SimConfig d;
    const dram::DdrTimingParams& t = d.timing;
    const ctrl::ControllerConfig& c = d.controller;
    const dram::Geometry& g = d.geometry;
    return std::vector<Field>{
        {"", "seed", Kind::kUint, 1},
        {"scheme", "id", Kind::kString, "secddr_xts", 0, 0, false, scheme_names},
        // Label only: where the memory-side logic sits. Behaviour is the same.
        {"scheme", "trusted_dimm", Kind::kBool, false},
        {"geometry", "channels", Kind::kUint, g.channels, 1, 1},
        {"geometry", "ranks", Kind::kUint, g.ranks, 1, 32, true},
        {"geometry", "bank_groups", Kind::kUint, g.bank_groups, 1, 32, true},
        {"geometry", "banks_per_group", Kind::kUint, g.banks_per_group, 1, 32, true},
        {"geometry", "rows", Kind::kUint, g.rows, 1, 1u << 30, true},
        {"geometry", "columns", Kind::kUint, g.columns, 1, 4096, true},
        {"timing", "tCL", Kind::kUint, t.tCL, 1, 1000},
        {"timing", "tCCDS", Kind::kUint, t.tCCDS, 1, 1000},
        {"timing", "tCCDL", Kind::kUint, t.tCCDL, 1, 1000},
        {"timing", "tCWL", Kind::kUint, t.tCWL, 1, 1000},
        {"timing", "tWTRS", Kind::kUint, t.tWTRS, 1, 1000},
        {"timing", "tWTRL", Kind::kUint, t.tWTRL, 1, 1000},
        {"timing", "tRP", Kind::kUint, t.tRP, 1, 1000},
        {"timing", "tRCD", Kind::kUint, t.tRCD, 1, 1000},
        {"timing", "tRAS", Kind::kUint, t.tRAS, 1, 1000},
        {"timing", "tRTP", Kind::kUint, t.tRTP, 1, 1000},
        {"timing", "tWR", Kind::kUint, t.tWR, 1, 1000},
        {"timing", "tRTRS", Kind::kUint, t.tRTRS, 0, 1000},
        {"timing", "bus_frequency_mhz", Kind::kUint, nullptr, 100, 10000},
        {"timing", "read_burst_cycles", Kind::kUint, t.read_burst_cycles, 1, 64},
        {"timing", "write_burst_cycles", Kind::kUint, nullptr, 1, 64},
        {"timing", "audit", Kind::kBool, false},
        {"controller", "read_queue_entries", Kind::kUint, c.read_queue_entries, 1, 4096},
        {"controller", "write_queue_entries", Kind::kUint, c.write_queue_entries, 1, 4096},
        {"controller", "drain_high", Kind::kUint, c.drain_high, 1, 4096},
        {"controller", "drain_low", Kind::kUint, c.drain_low, 0, 4096},
        {"controller", "max_outstanding_reads", Kind::kUint, c.max_outstanding_reads, 1, 4096},
        {"controller", "metadata_cache_bytes", Kind::kUint, c.metadata_cache_bytes, 0, 1ull << 32},
        {"controller", "metadata_cache_ways", Kind::kUint, c.metadata_cache_ways, 1, 64, true},
        {"controller", "cpu_frequency_mhz", Kind::kUint, c.cpu_mhz, 100, 10000},
        {"controller", "alert_delay", Kind::kUint, c.alert_delay, 0, 1000},
        {"controller", "halt_on_failure", Kind::kBool, c.halt_on_failure},
        {"security", "mac_width", Kind::kUint, 64, 1, 64},
        {"security", "crypt_mac_cycles", Kind::kUint, 40, 0, 10000},
        {"security", "invisimem_extra_mac_cycles", Kind::kUint, 40, 0, 10000},
        {"security", "secddr_write_otp_cycles", Kind::kUint, 8, 0, 1000},
        {"security", "counter_init", Kind::kString, "random", 0, 0, false, {"random", "monotonic"}},
        {"trace", "kind", Kind::kString, "uniform", 0, 0, false,
         {"uniform", "stream", "pointer_chase", "mixed"}},
        {"trace", "footprint", Kind::kSize, std::uint64_t{4} << 30, 64},
        {"trace", "events", Kind::kUint, 100000, 0, kMax32 * 16},
        {"trace", "read_fraction", Kind::kNumber, 1.0},
        {"trace", "gap", Kind::kUint, 0, 0, kMax32},
        {"trace", "file", Kind::kString, ""},
        {"attack", "script", Kind::kString, ""},
        {"attack", "episodes", Kind::kUint, 1, 1, 1000000},
    };
  }();
  return fields;
}

std::string Pointer(const Field& f) {
  return f.section[0] == '\0' ? std::string("/") + f.name
                              : std::string("/") + f.section + "/" + f.name;
}

const Json* Lookup(const Json& input, const Field& f) {
  if (f.section[0] == '\0') {
    auto it = input.find(f.name);
    return it == input.end() ? nullptr : &*it;
  }
  auto sec = input.find(f.section);
  if (sec == input.end() || !sec->is_object()) return nullptr;
  auto it = sec->find(f.name);
  return it == sec->end() ? nullptr : &*it;
}

std::optional<Json> CheckValue(const Field& f, const Json& v,
                               std::vector<ConfigIssue>& errors) {
  const std::string p = Pointer(f);
  switch (f.kind) {
    case Kind::kBool:
      if (!v.is_boolean()) {
        errors.push_back({p, "expected true or false"});
        return std::nullopt;
      }
      return v;
    case Kind::kNumber:
      if (!v.is_number()) {
        errors.push_back({p, "expected a number"});
        return std::nullopt;
      }
      return v.get<double>();
    case Kind::kString: {
      if (!v.is_string()) {
        errors.push_back({p, "expected a string"});
        return std::nullopt;
      }
      const std::string s = v.get<std::string>();
      if (!f.choices.empty() &&
          std::find(f.choices.begin(), f.choices.end(), s) == f.choices.end()) {
        std::string list;
        for (const auto& c : f.choices) list += (list.empty() ? "" : ", ") + c;
        errors.push_back({p, "\"" + s + "\" is not one of: " + list});
        return std::nullopt;
      }
      return v;
    }
    case Kind::kSize:
    case Kind::kUint: {
      std::uint64_t x = 0;
      if (v.is_number_unsigned()) {
        x = v.get<std::uint64_t>();
      } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        x = v.get<std::uint64_t>();
      } else if (f.kind == Kind::kSize && v.is_string()) {
        try {
          x = stats::ParseSize(v.get<std::string>());
        } catch (const std::exception& e) {
          errors.push_back({p, e.what()});
          return std::nullopt;
        }
      } else {
        errors.push_back({p, f.kind == Kind::kSize
                                 ? "expected a byte count such as \"4GiB\""
                                 : "expected a non-negative integer"});
        return std::nullopt;
      }
      if (x < f.min || x > f.max) {
        errors.push_back({p, "must be in [" + std::to_string(f.min) + ", " +
                                 std::to_string(f.max) + "]"});
        return std::nullopt;
      }
      if (f.pow2 && !std::has_single_bit(x)) {
        errors.push_back({p, "must be a power of two"});
        return std::nullopt;
      }
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace

Validation ValidateConfig(const Json& input) {
  Validation out;
  auto& errors = out.errors;
  if (!input.is_object()) {
    errors.push_back({"", "configuration must be a JSON object"});
    return out;
  }

  std::set<std::string> sections;
  for (const Field& f : Fields()) {
    if (f.section[0] != '\0') sections.insert(f.section);
  }
  for (const auto& [key, value] : input.items()) {
    if (sections.count(key) != 0) {
      if (!value.is_object()) {
        errors.push_back({"/" + key, "expected an object"});
        continue;
      }
      for (const auto& [name, v] : value.items()) {
        (void)v;
        const bool known = std::any_of(
            Fields().begin(), Fields().end(),
            [&](const Field& f) { return key == f.section && name == f.name; });
        if (!known) errors.push_back({"/" + key + "/" + name, "unknown field"});
      }
      continue;
    }
    const bool top = std::any_of(
        Fields().begin(), Fields().end(),
        [&](const Field& f) { return f.section[0] == '\0' && key == f.name; });
    if (!top) errors.push_back({"/" + key, "unknown field"});
  }

  std::map<std::string, Json> values;
  std::set<std::string> explicit_fields;
  for (const Field& f : Fields()) {
    const std::string p = Pointer(f);
    if (const Json* v = Lookup(input, f)) {
      if (auto checked = CheckValue(f, *v, errors)) {
        values[p] = *checked;
        explicit_fields.insert(p);
      }
    }
  }

  schemes::SchemeId scheme = schemes::SchemeId::kSecddrXts;
  if (values.count("/scheme/id") != 0) {
    scheme = *schemes::ParseScheme(values["/scheme/id"].get<std::string>());
  }
  const schemes::SchemeTraits traits = schemes::TraitsOf(scheme);
  const std::string scheme_name(schemes::SchemeName(scheme));

  for (const Field& f : Fields()) {
    const std::string p = Pointer(f);
    if (values.count(p) != 0) continue;
    if (!f.def.is_null()) {
      values[p] = f.def;
    } else if (p == "/timing/write_burst_cycles") {
      values[p] = traits.write_burst_cycles.value_or(4);
    } else if (p == "/timing/bus_frequency_mhz") {
      values[p] = traits.bus_mhz.value_or(1600);
    }
  }

  // Cross-field rules. Only fields that were checked individually get here.
  const auto u = [&](const char* p) { return values[p].get<std::uint64_t>(); };
  const auto given = [&](const char* p) { return explicit_fields.count(p) != 0; };

  if (traits.write_burst_cycles && given("/timing/write_burst_cycles") &&
      u("/timing/write_burst_cycles") != *traits.write_burst_cycles) {
    errors.push_back(
        {"/timing/write_burst_cycles",
         "scheme " + scheme_name + " (/scheme/id) needs " +
             std::to_string(*traits.write_burst_cycles) +
             " write burst cycles for its extra beats, got " +
             std::to_string(u("/timing/write_burst_cycles"))});
  }
  if (traits.bus_mhz && given("/timing/bus_frequency_mhz") &&
      u("/timing/bus_frequency_mhz") != *traits.bus_mhz) {
    errors.push_back({"/timing/bus_frequency_mhz",
                      "scheme " + scheme_name + " (/scheme/id) runs the bus at " +
                          std::to_string(*traits.bus_mhz) + " MHz, got " +
                          std::to_string(u("/timing/bus_frequency_mhz"))});
  }
  if (u("/controller/drain_low") >= u("/controller/drain_high")) {
    errors.push_back({"/controller/drain_low",
                      "must be below /controller/drain_high"});
  }
  if (u("/controller/drain_high") > u("/controller/write_queue_entries")) {
    errors.push_back({"/controller/drain_high",
                      "exceeds /controller/write_queue_entries"});
  }
  if (u("/timing/tRAS") < u("/timing/tRCD")) {
    errors.push_back({"/timing/tRAS", "shorter than /timing/tRCD"});
  }
  const double rf = values["/trace/read_fraction"].get<double>();
  if (rf < 0.0 || rf > 1.0) {
    errors.push_back({"/trace/read_fraction", "must be in [0, 1]"});
  }
  const std::uint64_t capacity = std::uint64_t{dram::Geometry::kLineBytes} *
                                 u("/geometry/channels") * u("/geometry/ranks") *
                                 u("/geometry/bank_groups") *
                                 u("/geometry/banks_per_group") *
                                 u("/geometry/rows") * u("/geometry/columns");
  if (values["/trace/file"].get<std::string>().empty()) {
    const std::uint64_t fp = u("/trace/footprint");
    if (fp > capacity) {
      errors.push_back({"/trace/footprint",
                        "exceeds the capacity set by /geometry (" +
                            std::to_string(capacity) + " bytes)"});
    }
    if (fp % dram::Geometry::kLineBytes != 0) {
      errors.push_back({"/trace/footprint", "must be a multiple of 64 bytes"});
    }
  }
  if (traits.channel == schemes::ChannelKind::kPlain &&
      values["/scheme/trusted_dimm"].get<bool>()) {
    errors.push_back({"/scheme/trusted_dimm",
                      "scheme " + scheme_name +
                          " (/scheme/id) has no memory-side logic to place"});
  }

  if (!errors.empty()) return out;

  OJson cfg;
  for (const Field& f : Fields()) {
    const Json& v = values[Pointer(f)];
    if (f.section[0] == '\0') {
      cfg[f.name] = v;
    } else {
      cfg[f.section][f.name] = v;
    }
  }
  out.config = std::move(cfg);
  return out;
}

Validation ValidateConfigText(std::string_view bytes) {
  Json input;
  try {
    input = bytes.find_first_not_of(" \t\r\n") == std::string_view::npos
                ? Json::object()
                : Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    Validation v;
    v.errors.push_back({"", std::string("not valid JSON: ") + e.what()});
    return v;
  }
  return ValidateConfig(input);
}

void SetField(Json& config, std::string_view pointer, Json value) {
  config[Json::json_pointer(std::string(pointer))] = std::move(value);
}

std::vector<ConfigIssue> ApplyEnvOverrides(
    Json& config, const std::map<std::string, std::string>& env) {
  std::vector<ConfigIssue> issues;
  constexpr std::string_view kPrefix = "SECMEM_";
  for (const auto& [key, raw] : env) {
    if (key.rfind(kPrefix, 0) != 0) continue;
    std::string rest = key.substr(kPrefix.size());
    std::transform(rest.begin(), rest.end(), rest.begin(), [](unsigned char c) {
      return static_cast<char>(std::tolower(c));
    });
    std::string pointer;
    const auto sep = rest.find("__");
    if (sep == std::string::npos) {
      pointer = "/" + rest;
    } else {
      pointer = "/" + rest.substr(0, sep) + "/" + rest.substr(sep + 2);
    }
    // Timing parameters keep their capitalisation (tCL, tRAS, ...).
    const Field* match = nullptr;
    for (const Field& f : Fields()) {
      std::string p = Pointer(f);
      std::string lower = p;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (lower == pointer) {
        match = &f;
        pointer = p;
        break;
      }
    }
    if (match == nullptr) {
      issues.push_back({pointer, "environment variable " + key +
                                     " does not name a configuration field"});
      continue;
    }
    Json value;
    try {
      value = Json::parse(raw);
    } catch (const Json::parse_error&) {
      value = raw;
    }
    if (match->kind == Kind::kString && !value.is_string()) value = raw;
    if (config.contains(match->section) && !config[match->section].is_object() &&
        match->section[0] != '\0') {
      issues.push_back({std::string("/") + match->section, "expected an object"});
      continue;
    }
    SetField(config, pointer, std::move(value));
  }
  return issues;
}

std::map<std::string, std::string> SecmemEnvironment() {
  std::map<std::string, std::string> env;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    const std::string kv = *e;
    if (kv.rfind("SECMEM_", 0) != 0) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    env[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return env;
}

RunSpec ToRunSpec(const OJson& c) {
  const auto u32 = [&](const char* sec, const char* name) {
    return static_cast<std::uint32_t>(c.at(sec).at(name).get<std::uint64_t>());
  };
  RunSpec r;
  ctrl::SimConfig& s = r.sim;
  s.seed = c.at("seed").get<std::uint64_t>();
  s.scheme = *schemes::ParseScheme(c.at("scheme").at("id").get<std::string>());

  s.geometry.channels = u32("geometry", "channels");
  s.geometry.ranks = u32("geometry", "ranks");
  s.geometry.bank_groups = u32("geometry", "bank_groups");
  s.geometry.banks_per_group = u32("geometry", "banks_per_group");
  s.geometry.rows = u32("geometry", "rows");
  s.geometry.columns = u32("geometry", "columns");

  dram::DdrTimingParams& t = s.timing;
  t.tCL = u32("timing", "tCL");
  t.tCCDS = u32("timing", "tCCDS");
  t.tCCDL = u32("timing", "tCCDL");
  t.tCWL = u32("timing", "tCWL");
  t.tWTRS = u32("timing", "tWTRS");
  t.tWTRL = u32("timing", "tWTRL");
  t.tRP = u32("timing", "tRP");
  t.tRCD = u32("timing", "tRCD");
  t.tRAS = u32("timing", "tRAS");
  t.tRTP = u32("timing", "tRTP");
  t.tWR = u32("timing", "tWR");
  t.tRTRS = u32("timing", "tRTRS");
  t.bus_mhz = u32("timing", "bus_frequency_mhz");
  t.read_burst_cycles = u32("timing", "read_burst_cycles");
  t.write_burst_cycles = u32("timing", "write_burst_cycles");
  s.audit_timing = c.at("timing").at("audit").get<bool>();

  ctrl::ControllerConfig& k = s.controller;
  k.read_queue_entries = u32("controller", "read_queue_entries");
  k.write_queue_entries = u32("controller", "write_queue_entries");
  k.drain_high = u32("controller", "drain_high");
  k.drain_low = u32("controller", "drain_low");
  k.max_outstanding_reads = u32("controller", "max_outstanding_reads");
  k.metadata_cache_bytes = c.at("controller").at("metadata_cache_bytes").get<std::uint64_t>();
  k.metadata_cache_ways = u32("controller", "metadata_cache_ways");
  k.cpu_mhz = u32("controller", "cpu_frequency_mhz");
  k.alert_delay = u32("controller", "alert_delay");
  k.halt_on_failure = c.at("controller").at("halt_on_failure").get<bool>();

  ctrl::SecurityConfig& sec = s.security;
  sec.mac_width = u32("security", "mac_width");
  sec.crypt_mac_cycles = u32("security", "crypt_mac_cycles");
  sec.invisimem_extra_mac_cycles = u32("security", "invisimem_extra_mac_cycles");
  sec.secddr_write_otp_cycles = u32("security", "secddr_write_otp_cycles");
  sec.counter_init = c.at("security").at("counter_init") == "monotonic"
                         ? ctrl::CounterInit::kMonotonic
                         : ctrl::CounterInit::kRandom;

  const std::string kind = c.at("trace").at("kind").get<std::string>();
  r.trace.kind = kind == "stream"          ? stats::TraceKind::kStream
                 : kind == "pointer_chase" ? stats::TraceKind::kPointerChase
                 : kind == "mixed"         ? stats::TraceKind::kMixed
                                           : stats::TraceKind::kUniform;
  r.trace.footprint_bytes = c.at("trace").at("footprint").get<std::uint64_t>();
  r.trace.events = c.at("trace").at("events").get<std::uint64_t>();
  r.trace.read_fraction = c.at("trace").at("read_fraction").get<double>();
  r.trace.gap = c.at("trace").at("gap").get<std::uint64_t>();
  r.trace_file = c.at("trace").at("file").get<std::string>();

  r.attack = c.at("attack").at("script").get<std::string>();
  r.attack_episodes = u32("attack", "episodes");
  return r;
}

std::string FormatIssues(const std::vector<ConfigIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    out += (i.pointer.empty() ? std::string("(root)") : i.pointer) + ": " +
           i.message + "\n";
  }
  return out;
}

}  // namespace secddr::cli
