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

#include "secddr/cli/runner.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "secddr/adversary/episodes.h"
#include "secddr/adversary/interposer.h"
#include "secddr/schemes/scheme.h"
#include "secddr/stats/report.h"

namespace secddr::cli {
namespace {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

std::string RunName(const OJson& config) {
  return config.at("scheme").at("id").get<std::string>() + "_seed" +
         std::to_string(config.at("seed").get<std::uint64_t>());
}

RunResult Fail(int code, std::string message) {
  RunResult r;
  r.exit_code = code;
  r.message = std::move(message);
  return r;
}

RunResult ExecuteMatrix(const OJson& config, const RunSpec& spec) {
  const adversary::MatrixResult m = adversary::RunAttackMatrix(
      spec.sim, spec.sim.seed, spec.attack_episodes);
  RunResult r;
  r.name = RunName(config);
  OJson rows = OJson::array();
  unsigned variants_detected = 0;
  for (const auto& row : m.rows) {
    OJson j;
    j["action"] = std::string(adversary::ActionName(row.action));
    j["episodes"] = row.episodes;
    j["injected"] = row.injected;
    j["detected"] = row.detected;
    rows.push_back(std::move(j));
    if (row.detected == row.episodes) ++variants_detected;
  }
  const std::string summary = std::to_string(variants_detected) + "/" +
                              std::to_string(m.rows.size());
  OJson& rep = r.report;
  rep["scheme"] = config.at("scheme").at("id");
  rep["seed"] = config.at("seed");
  rep["config_hash"] = stats::ConfigHash(config);
  rep["mode"] = "attack_matrix";
  rep["episodes_per_variant"] = spec.attack_episodes;
  rep["variants_detected"] = summary;
  rep["matrix"] = std::move(rows);
  rep["ledger"] = m.ledger.ToJson();
  rep["config"] = config;
  r.exit_code = m.all_detected() ? kExitOk : kExitUndetected;
  r.message = r.name + ": attack matrix " + summary + " variants detected";
  return r;
}

}  // namespace

RunResult Execute(const OJson& config) {
  const RunSpec spec = ToRunSpec(config);
  if (spec.attack == "matrix") return ExecuteMatrix(config, spec);

  std::optional<adversary::AttackScript> script;
  if (!spec.attack.empty()) {
    try {
      script = adversary::LoadAttackScript(spec.attack);
    } catch (const adversary::ScriptError& e) {
      return Fail(kExitConfig, std::string("attack script: ") + e.what());
    }
  }

  std::vector<stats::TraceEvent> trace;
  if (!spec.trace_file.empty()) {
    std::ifstream in(spec.trace_file);
    if (!in) return Fail(kExitConfig, spec.trace_file + ": cannot open trace");
    try {
      trace = stats::ReadTrace(in);
    } catch (const stats::TraceError& e) {
      return Fail(kExitConfig, spec.trace_file + ": " + e.what());
    }
    // Addresses wrap into the configured capacity.
    const std::uint64_t mask = spec.sim.geometry.capacity_bytes() - 1;
    for (auto& e : trace) e.address &= mask;
  } else {
    trace = stats::GenerateTrace(spec.trace, spec.sim.seed);
  }

  ctrl::System sys(spec.sim);
  const ctrl::BootReport boot = sys.Boot();
  if (!boot.ok) {
    std::string why = "attestation failed";
    for (const auto& h : boot.ranks) {
      if (!h.ok()) why += ": " + h.detail;
    }
    return Fail(kExitFailure, why);
  }

  std::optional<adversary::ScriptedAdversary> adv;
  if (script) {
    adv.emplace(*script, spec.sim.seed, sys.module());
    sys.set_interposer(&*adv);
  }
  sys.Run(trace);

  stats::RunReport report = stats::BuildReport(sys, config, trace.size());
  RunResult r;
  r.name = RunName(config);
  if (adv) {
    adversary::DetectionLedger& ledger = adv->ledger();
    ledger.Correlate(sys.controller().detections());
    report.ledger = ledger.ToJson();
    r.exit_code = ledger.undetected() > 0 ? kExitUndetected : kExitOk;
    r.message = r.name + ": " + std::to_string(ledger.detected()) + "/" +
                std::to_string(ledger.injected()) + " injections detected";
  } else {
    const bool clean = sys.controller().detections().empty();
    r.exit_code = clean ? kExitOk : kExitFailure;
    r.message = r.name + ": " + std::to_string(report.total_cycles) +
                " cycles" + (clean ? "" : ", unexpected verification failures");
  }
  r.report = stats::ToJson(report);
  r.csv_row = stats::CsvRow(report);
  return r;
}

namespace {

struct Flags {
  std::string config_path;
  std::string scheme;
  std::string trace;
  std::string attack;
  std::string out_dir = ".";
  std::string sweep;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> mac_width;
  std::optional<unsigned> episodes;
};

// Config file, then SECMEM_* variables, then flags.
bool BuildInput(const Flags& f, Json& input, std::ostream& err) {
  input = Json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      err << f.config_path << ": cannot open\n";
      return false;
    }
    try {
      input = Json::parse(in);
    } catch (const Json::parse_error& e) {
      err << f.config_path << ": not valid JSON: " << e.what() << "\n";
      return false;
    }
    if (!input.is_object()) {
      err << f.config_path << ": (root): configuration must be a JSON object\n";
      return false;
    }
  }
  const auto issues = ApplyEnvOverrides(input, SecmemEnvironment());
  if (!issues.empty()) {
    err << FormatIssues(issues);
    return false;
  }
  if (!f.scheme.empty()) SetField(input, "/scheme/id", f.scheme);
  if (f.seed) SetField(input, "/seed", *f.seed);
  if (f.mac_width) SetField(input, "/security/mac_width", *f.mac_width);
  if (f.episodes) SetField(input, "/attack/episodes", *f.episodes);
  if (!f.attack.empty()) SetField(input, "/attack/script", f.attack);
  if (!f.trace.empty()) {
    if (f.trace.find(':') != std::string::npos &&
        !std::filesystem::exists(f.trace)) {
      stats::TraceSpec t;
      try {
        t = stats::ParseTraceSpec(f.trace);
      } catch (const std::exception& e) {
        err << "--trace: " << e.what() << "\n";
        return false;
      }
      const std::string spec = stats::FormatTraceSpec(t);
      SetField(input, "/trace/kind", spec.substr(0, spec.find(':')));
      SetField(input, "/trace/footprint", t.footprint_bytes);
      SetField(input, "/trace/events", t.events);
      SetField(input, "/trace/read_fraction", t.read_fraction);
      SetField(input, "/trace/file", "");
    } else {
      SetField(input, "/trace/file", f.trace);
    }
  }
  return true;
}

bool WriteFile(const std::filesystem::path& p, const std::string& text,
               std::ostream& err) {
  std::ofstream o(p, std::ios::binary);
  o << text;
  if (!o) {
    err << p.string() << ": cannot write\n";
    return false;
  }
  return true;
}

int Severity(int code) {
  switch (code) {
    case kExitConfig: return 3;
    case kExitUndetected: return 2;
    case kExitFailure: return 1;
    default: return 0;
  }
}

int RunSingle(const Flags& f, std::ostream& out, std::ostream& err) {
  Json input;
  if (!BuildInput(f, input, err)) return kExitConfig;
  const Validation v = ValidateConfig(input);
  if (!v.ok()) {
    err << FormatIssues(v.errors);
    return kExitConfig;
  }
  RunResult r = Execute(*v.config);
  if (r.report.is_null()) {
    err << r.message << "\n";
    return r.exit_code;
  }
  std::filesystem::create_directories(f.out_dir);
  const auto path = std::filesystem::path(f.out_dir) / (r.name + ".json");
  if (!WriteFile(path, r.report.dump(2) + "\n", err)) return kExitFailure;
  out << r.message << "\n" << "report: " << path.string() << "\n";
  return r.exit_code;
}

int RunSweep(const Flags& f, std::ostream& out, std::ostream& err) {
  Json sweep;
  {
    std::ifstream in(f.sweep);
    if (!in) {
      err << f.sweep << ": cannot open\n";
      return kExitConfig;
    }
    try {
      sweep = Json::parse(in);
    } catch (const Json::parse_error& e) {
      err << f.sweep << ": not valid JSON: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  if (!sweep.is_object()) {
    err << f.sweep << ": (root): expected an object\n";
    return kExitConfig;
  }
  std::vector<std::string> scheme_ids;
  if (sweep.contains("schemes")) {
    if (!sweep["schemes"].is_array()) {
      err << f.sweep << ": /schemes: expected an array of scheme ids\n";
      return kExitConfig;
    }
    for (std::size_t i = 0; i < sweep["schemes"].size(); ++i) {
      const Json& s = sweep["schemes"][i];
      if (!s.is_string()) {
        err << f.sweep << ": /schemes/" << i << ": expected a scheme id\n";
        return kExitConfig;
      }
      scheme_ids.push_back(s.get<std::string>());
    }
  } else {
    for (auto id : schemes::kAllSchemes) {
      scheme_ids.emplace_back(schemes::SchemeName(id));
    }
  }
  std::vector<std::uint64_t> seeds;
  if (sweep.contains("seeds")) {
    if (!sweep["seeds"].is_array()) {
      err << f.sweep << ": /seeds: expected an array\n";
      return kExitConfig;
    }
    for (std::size_t i = 0; i < sweep["seeds"].size(); ++i) {
      if (!sweep["seeds"][i].is_number_unsigned()) {
        err << f.sweep << ": /seeds/" << i << ": expected an unsigned integer\n";
        return kExitConfig;
      }
      seeds.push_back(sweep["seeds"][i].get<std::uint64_t>());
    }
  }
  for (const auto& [key, value] : sweep.items()) {
    (void)value;
    if (key != "schemes" && key != "seeds" && key != "config") {
      err << f.sweep << ": /" << key << ": unknown field\n";
      return kExitConfig;
    }
  }

  Json base;
  if (!BuildInput(f, base, err)) return kExitConfig;
  if (sweep.contains("config")) {
    if (!sweep["config"].is_object()) {
      err << f.sweep << ": /config: expected an object\n";
      return kExitConfig;
    }
    Json merged = sweep["config"];
    merged.merge_patch(base);
    base = std::move(merged);
  }
  if (seeds.empty()) {
    seeds.push_back(base.contains("seed") && base["seed"].is_number_unsigned()
                        ? base["seed"].get<std::uint64_t>()
                        : 1);
  }

  std::vector<OJson> configs;
  bool bad = false;
  for (const auto& id : scheme_ids) {
    for (std::uint64_t seed : seeds) {
      Json input = base;
      SetField(input, "/scheme/id", id);
      SetField(input, "/seed", seed);
      const Validation v = ValidateConfig(input);
      if (!v.ok()) {
        err << "[" << id << ", seed " << seed << "]\n" << FormatIssues(v.errors);
        bad = true;
        continue;
      }
      configs.push_back(*v.config);
    }
  }
  if (bad) return kExitConfig;

  // Each run is confined to one worker; results are merged in sweep order.
  const std::size_t workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  std::vector<RunResult> results(configs.size());
  for (std::size_t first = 0; first < configs.size(); first += workers) {
    std::vector<std::future<RunResult>> futs;
    const std::size_t last = std::min(configs.size(), first + workers);
    for (std::size_t i = first; i < last; ++i) {
      futs.push_back(std::async(std::launch::async, Execute, std::cref(configs[i])));
    }
    for (std::size_t i = first; i < last; ++i) results[i] = futs[i - first].get();
  }

  std::filesystem::create_directories(f.out_dir);
  std::string csv = stats::CsvHeader();
  int worst = kExitOk;
  for (const RunResult& r : results) {
    if (Severity(r.exit_code) > Severity(worst)) worst = r.exit_code;
    if (r.report.is_null()) {
      err << r.message << "\n";
      continue;
    }
    const auto path = std::filesystem::path(f.out_dir) / (r.name + ".json");
    if (!WriteFile(path, r.report.dump(2) + "\n", err)) return kExitFailure;
    csv += r.csv_row;
    out << r.message << "\n";
  }
  const auto csv_path = std::filesystem::path(f.out_dir) / "sweep.csv";
  if (!WriteFile(csv_path, csv, err)) return kExitFailure;
  out << "aggregate: " << csv_path.string() << "\n";
  return worst;
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"secmem: secure memory channel simulator"};
  app.require_subcommand(1);
  Flags f;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config_path, "JSON configuration file");
    sub->add_option("--scheme", f.scheme, "scheme id, e.g. secddr_xts");
    sub->add_option("--trace", f.trace,
                    "trace file, or kind:footprint:events[:read_fraction]");
    sub->add_option("--attack", f.attack, "attack script file, or \"matrix\"");
    sub->add_option("--seed", f.seed, "run seed");
    sub->add_option("--mac-width", f.mac_width, "MAC truncation width in bits");
    sub->add_option("--episodes", f.episodes,
                    "attack-matrix episodes per variant");
  };
  CLI::App* run = app.add_subcommand("run", "simulate and write reports");
  add_common(run);
  run->add_option("--out", f.out_dir, "output directory");
  run->add_option("--sweep", f.sweep,
                  "sweep file: {\"schemes\": [...], \"seeds\": [...], "
                  "\"config\": {...}}");
  CLI::App* validate =
      app.add_subcommand("validate", "print the normalized configuration");
  add_common(validate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (validate->parsed()) {
      Json input;
      if (!BuildInput(f, input, err)) return kExitConfig;
      const Validation v = ValidateConfig(input);
      if (!v.ok()) {
        err << FormatIssues(v.errors);
        return kExitConfig;
      }
      out << v.config->dump(2) << "\n";
      return kExitOk;
    }
    return f.sweep.empty() ? RunSingle(f, out, err) : RunSweep(f, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace secddr::cli
