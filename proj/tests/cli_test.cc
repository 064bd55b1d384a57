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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "secddr/cli/config.h"
#include "secddr/cli/runner.h"

namespace secddr::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

bool HasIssue(const std::vector<ConfigIssue>& issues, const std::string& ptr) {
  for (const auto& i : issues) {
    if (i.pointer == ptr) return true;
  }
  return false;
}

TEST(Config, EmptyInputGivesFullDefaults) {
  const Validation v = ValidateConfigText("  \n");
  ASSERT_TRUE(v.ok()) << FormatIssues(v.errors);
  const auto& c = *v.config;
  EXPECT_EQ(c["scheme"]["id"], "secddr_xts");
  EXPECT_EQ(c["timing"]["tCL"], 22);
  EXPECT_EQ(c["timing"]["bus_frequency_mhz"], 1600);
  EXPECT_EQ(c["controller"]["metadata_cache_bytes"], 131072);
  EXPECT_EQ(c["controller"]["drain_high"], 48);
  EXPECT_EQ(c["security"]["crypt_mac_cycles"], 40);
  EXPECT_EQ(c["trace"]["footprint"], 4ull << 30);
}

TEST(Config, SchemeDependentDefaults) {
  const auto burst = [](const char* scheme) {
    return ValidateConfig({{"scheme", {{"id", scheme}}}})
        .config->at("timing")
        .at("write_burst_cycles")
        .get<unsigned>();
  };
  EXPECT_EQ(burst("secddr_xts"), 5u);
  EXPECT_EQ(burst("secddr_ctr"), 5u);
  EXPECT_EQ(burst("encrypt_xts"), 4u);
  const auto real = ValidateConfig({{"scheme", {{"id", "invisimem_real"}}}});
  EXPECT_EQ(real.config->at("timing").at("bus_frequency_mhz"), 1200);
}

TEST(Config, CrossFieldErrorsNameBothFields) {
  const auto v = ValidateConfig({{"scheme", {{"id", "invisimem_real"}}},
                                 {"timing", {{"bus_frequency_mhz", 1600}}}});
  ASSERT_FALSE(v.ok());
  ASSERT_TRUE(HasIssue(v.errors, "/timing/bus_frequency_mhz"));
  const std::string text = FormatIssues(v.errors);
  EXPECT_NE(text.find("/scheme/id"), std::string::npos) << text;
  EXPECT_NE(text.find("1600"), std::string::npos) << text;

  const auto w = ValidateConfig({{"scheme", {{"id", "secddr_ctr"}}},
                                 {"timing", {{"write_burst_cycles", 4}}}});
  ASSERT_FALSE(w.ok());
  EXPECT_NE(FormatIssues(w.errors).find("/scheme/id"), std::string::npos);
}

TEST(Config, ErrorsCarryJsonPointers) {
  const auto v = ValidateConfig({{"geometry", {{"ranks", 3}, {"bogus", 1}}},
                                 {"controller", {{"drain_low", 60}}},
                                 {"trace", {{"read_fraction", 1.5},
                                            {"footprint", "100"}}},
                                 {"extra", 1}});
  ASSERT_FALSE(v.ok());
  for (const char* p : {"/geometry/ranks", "/geometry/bogus", "/controller/drain_low",
                        "/trace/read_fraction", "/trace/footprint", "/extra"}) {
    EXPECT_TRUE(HasIssue(v.errors, p)) << p << "\n" << FormatIssues(v.errors);
  }
}

TEST(Config, RejectsMalformedJsonAndTypes) {
  EXPECT_FALSE(ValidateConfigText("{").ok());
  EXPECT_FALSE(ValidateConfigText("[]").ok());
  const auto v = ValidateConfig({{"seed", -1}, {"timing", {{"audit", "yes"}}}});
  EXPECT_TRUE(HasIssue(v.errors, "/seed"));
  EXPECT_TRUE(HasIssue(v.errors, "/timing/audit"));
  EXPECT_TRUE(HasIssue(
      ValidateConfig({{"scheme", {{"id", "encrypt_xts"}, {"trusted_dimm", true}}}})
          .errors,
      "/scheme/trusted_dimm"));
}

TEST(Config, FootprintAcceptsSizeStrings) {
  const auto v = ValidateConfig({{"trace", {{"footprint", "32MiB"}}}});
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v.config->at("trace").at("footprint"), 32u << 20);
}

TEST(Config, EnvironmentOverrides) {
  Json c = Json::object();
  const auto issues = ApplyEnvOverrides(
      c, {{"SECMEM_TIMING__TCL", "24"},
          {"SECMEM_SEED", "9"},
          {"SECMEM_SCHEME__ID", "tree64"},
          {"OTHER", "x"}});
  EXPECT_TRUE(issues.empty()) << FormatIssues(issues);
  EXPECT_EQ(c["timing"]["tCL"], 24);
  EXPECT_EQ(c["seed"], 9);
  EXPECT_EQ(c["scheme"]["id"], "tree64");
  EXPECT_TRUE(ValidateConfig(c).ok());

  Json d = Json::object();
  EXPECT_FALSE(ApplyEnvOverrides(d, {{"SECMEM_NOPE__X", "1"}}).empty());
}

TEST(Config, RunSpecCarriesValues) {
  const auto v = ValidateConfig({{"seed", 5},
                                 {"scheme", {{"id", "tree128"}}},
                                 {"security", {{"mac_width", 32}}},
                                 {"trace", {{"kind", "mixed"}, {"events", 10}}}});
  ASSERT_TRUE(v.ok());
  const RunSpec s = ToRunSpec(*v.config);
  EXPECT_EQ(s.sim.seed, 5u);
  EXPECT_EQ(s.sim.scheme, schemes::SchemeId::kTree128);
  EXPECT_EQ(s.sim.security.mac_width, 32u);
  EXPECT_EQ(s.trace.kind, stats::TraceKind::kMixed);
  EXPECT_EQ(s.trace.events, 10u);
}

// The published schema lists exactly the fields the validator knows, with
// the same defaults (scheme-dependent ones at the default scheme).
TEST(Config, SchemaMatchesValidatorDefaults) {
  std::ifstream in(SECDDR_SOURCE_DIR "/docs/config.schema.json");
  ASSERT_TRUE(in) << "schema missing";
  const Json schema = Json::parse(in);
  const auto defaults = *ValidateConfig(Json::object()).config;
  std::size_t fields = 0;
  for (const auto& [key, value] : defaults.items()) {
    ASSERT_TRUE(schema["properties"].contains(key)) << key;
    const Json& prop = schema["properties"][key];
    if (value.is_object()) {
      EXPECT_EQ(prop["properties"].size(), value.size()) << key;
      for (const auto& [name, v] : value.items()) {
        ASSERT_TRUE(prop["properties"].contains(name)) << key << "/" << name;
        EXPECT_EQ(prop["properties"][name]["default"], Json(v)) << key << "/" << name;
        ++fields;
      }
    } else {
      EXPECT_EQ(prop["default"], Json(value)) << key;
      ++fields;
    }
  }
  EXPECT_EQ(schema["properties"].size(), defaults.size());
  EXPECT_EQ(fields, 48u);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("secmem_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return Main(args, out_, err_);
  }
  std::string Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, RunWritesReport) {
  EXPECT_EQ(Run({"run", "--scheme", "secddr_ctr", "--trace", "mixed:1MiB:500",
                 "--seed", "3", "--out", dir_.string()}),
            kExitOk)
      << err_.str();
  const fs::path report = dir_ / "secddr_ctr_seed3.json";
  ASSERT_TRUE(fs::exists(report));
  std::ifstream in(report);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["scheme"], "secddr_ctr");
  EXPECT_EQ(j["trace_events"], 500);
  EXPECT_EQ(j["verdict_mac_fail"], 0);
}

TEST_F(CliTest, ConfigErrorsExitThree) {
  const std::string cfg = Write(
      "bad.json",
      R"({"scheme": {"id": "invisimem_real"}, "timing": {"bus_frequency_mhz": 1600}})");
  EXPECT_EQ(Run({"validate", "--config", cfg}), kExitConfig);
  EXPECT_NE(err_.str().find("/timing/bus_frequency_mhz"), std::string::npos);
  EXPECT_EQ(Run({"run", "--scheme", "nope", "--out", dir_.string()}), kExitConfig);
  EXPECT_EQ(Run({"run", "--trace", "zipf:1MiB:5", "--out", dir_.string()}),
            kExitConfig);
  const std::string script = Write("a.json", R"({"triggers": [{"action": "x"}]})");
  EXPECT_EQ(Run({"run", "--attack", script, "--trace", "uniform:1MiB:10",
                 "--out", dir_.string()}),
            kExitConfig);
  EXPECT_NE(err_.str().find("/triggers/0"), std::string::npos) << err_.str();
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  const std::string cfg = Write("c.json", R"({"scheme": {"id": "tree64"}, "seed": 4})");
  ASSERT_EQ(Run({"validate", "--config", cfg, "--seed", "8"}), kExitOk) << err_.str();
  const Json j = Json::parse(out_.str());
  EXPECT_EQ(j["scheme"]["id"], "tree64");
  EXPECT_EQ(j["seed"], 8);
}

TEST_F(CliTest, MatrixOnSecddrDetectsEverything) {
  EXPECT_EQ(Run({"run", "--scheme", "secddr_xts", "--attack", "matrix",
                 "--episodes", "2", "--out", dir_.string()}),
            kExitOk)
      << err_.str();
}

TEST_F(CliTest, MatrixOnEncryptOnlyReportsUndetected) {
  EXPECT_EQ(Run({"run", "--scheme", "encrypt_xts", "--attack", "matrix",
                 "--out", dir_.string()}),
            kExitUndetected);
}

TEST_F(CliTest, ScriptedReplayOnSecddrIsDetected) {
  const std::string script = Write(
      "replay.json",
      R"({"triggers": [{"transaction": 200, "action": "ReplayBusTuple"}]})");
  EXPECT_EQ(Run({"run", "--scheme", "secddr_xts", "--attack", script, "--trace",
                 "mixed:64KiB:2000", "--out", dir_.string()}),
            kExitOk)
      << err_.str();
  std::ifstream in(dir_ / "secddr_xts_seed1.json");
  const Json j = Json::parse(in);
  ASSERT_TRUE(j.contains("ledger"));
}

TEST_F(CliTest, SweepWritesOneReportPerRunAndCsv) {
  const std::string sweep =
      Write("sweep.json", R"({"seeds": [1], "config": {"trace": {"events": 300, "footprint": "1MiB"}}})");
  ASSERT_EQ(Run({"run", "--sweep", sweep, "--out", dir_.string()}), kExitOk)
      << err_.str();
  int reports = 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const std::string n = e.path().filename().string();
    if (n.find("_seed1.json") != std::string::npos) ++reports;
  }
  EXPECT_EQ(reports, 9);
  std::ifstream csv(dir_ / "sweep.csv");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 10);
}

}  // namespace
}  // namespace secddr::cli
