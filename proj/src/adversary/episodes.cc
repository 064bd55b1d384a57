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

#include "secddr/adversary/episodes.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "secddr/adversary/interposer.h"
#include "secddr/stats/trace.h"

namespace secddr::adversary {
namespace {

std::uint64_t EpisodeSeed(std::uint64_t seed, ActionKind action,
                          unsigned episode) {
  std::mt19937_64 g(seed ^ (0x9e3779b97f4a7c15ULL *
                            (static_cast<std::uint64_t>(action) + 1)));
  g.discard(episode);
  return g();
}

}  // namespace

EpisodeResult RunEpisode(const ctrl::SimConfig& base,
                         std::optional<ActionKind> action, std::uint64_t seed,
                         unsigned lines) {
  ctrl::SimConfig cfg = base;
  cfg.seed = seed;
  cfg.controller.halt_on_failure = false;
  ctrl::System sys(cfg);
  sys.Boot();

  std::mt19937_64 rng(seed ^ 0x5eed0fa77ac4ULL);
  const std::uint64_t data_lines = sys.geometry().data_lines();
  std::vector<std::uint64_t> addrs;
  std::unordered_set<std::uint64_t> seen;
  while (addrs.size() < lines) {
    const std::uint64_t a =
        stats::BoundedDraw(rng, data_lines) * dram::Geometry::kLineBytes;
    if (seen.insert(a).second) addrs.push_back(a);
  }

  ScriptedAdversary adv({}, rng(), sys.module());
  if (action) sys.set_interposer(&adv);

  EpisodeResult out;
  out.action = action;
  bool after_wake = false;
  sys.set_read_observer([&](const ctrl::ReadCompletion& c) {
    ++out.reads;
    if (c.verdict != ctrl::Verdict::kPass) ++out.failing_verdicts;
    if (after_wake && !out.first_read_after_wake) {
      out.first_read_after_wake = c.verdict;
    }
  });

  const auto txn = [&] { return sys.controller().column_transactions(); };
  const auto somewhere = [&] { return txn() + stats::BoundedDraw(rng, lines); };
  const auto arm = [&](ActionKind k, std::uint64_t at) {
    Trigger t;
    t.at = at;
    t.action.kind = k;
    if (k == ActionKind::kReplayBusTuple || k == ActionKind::kFlipStoredBits) {
      t.action.address = addrs[stats::BoundedDraw(rng, addrs.size())];
    }
    adv.Arm(t);
  };
  const auto phase = [&](stats::AccessKind kind) {
    for (std::uint64_t a : addrs) sys.Submit(stats::TraceEvent{kind, a, 0});
    sys.Drain();
  };
  const auto is = [&](ActionKind k) { return action && *action == k; };

  phase(stats::AccessKind::kWrite);

  if (is(ActionKind::kReplayBusTuple)) arm(ActionKind::kReplayBusTuple, txn());
  if (is(ActionKind::kRestoreModule)) {
    arm(ActionKind::kSnapshotModule, somewhere());
  }
  phase(stats::AccessKind::kRead);

  // First sleep. A module frozen here is swapped in at the next wake.
  sys.Sleep();
  adv.OnWake(sys.controller().now());
  if (is(ActionKind::kSubstituteModuleAcrossWake)) {
    arm(ActionKind::kSubstituteModuleAcrossWake, txn());
  }

  if (action) {
    switch (*action) {
      case ActionKind::kCorruptActivateRow:
      case ActionKind::kCorruptColumn:
      case ActionKind::kDropWrite:
      case ActionKind::kConvertWriteToRead:
      case ActionKind::kRestoreModule:
        arm(*action, somewhere());
        break;
      default:
        break;
    }
  }
  phase(stats::AccessKind::kWrite);

  sys.Sleep();
  adv.OnWake(sys.controller().now());
  after_wake = true;
  if (is(ActionKind::kFlipStoredBits)) arm(ActionKind::kFlipStoredBits, txn());
  phase(stats::AccessKind::kRead);

  out.ledger = adv.ledger();
  out.ledger.Correlate(sys.controller().detections());
  out.detected = out.ledger.injected() > 0 && out.ledger.undetected() == 0;
  for (const auto& e : out.ledger.entries()) {
    if (!e.passive && !e.injected_at) out.detected = false;
  }
  return out;
}

bool MatrixResult::all_detected() const {
  return std::all_of(rows.begin(), rows.end(), [](const MatrixRow& r) {
    return r.detected == r.episodes;
  });
}

MatrixResult RunAttackMatrix(const ctrl::SimConfig& base, std::uint64_t seed,
                             unsigned episodes, unsigned lines,
                             unsigned threads) {
  struct Partial {
    MatrixRow row;
    DetectionLedger ledger;
  };
  const auto run_variant = [&](ActionKind k) {
    Partial p;
    p.row.action = k;
    for (unsigned e = 0; e < episodes; ++e) {
      EpisodeResult r = RunEpisode(base, k, EpisodeSeed(seed, k, e), lines);
      ++p.row.episodes;
      if (r.ledger.injected() > 0) ++p.row.injected;
      if (r.detected) ++p.row.detected;
      if (r.first_read_after_wake == ctrl::Verdict::kMacFail) {
        ++p.row.first_read_after_wake_failed;
      }
      p.ledger.Append(r.ledger);
    }
    return p;
  };

  const std::size_t n = kActiveActions.size();
  const std::size_t workers = threads == 0 ? n : std::min<std::size_t>(threads, n);
  std::vector<Partial> parts(n);
  for (std::size_t first = 0; first < n; first += workers) {
    std::vector<std::future<Partial>> futs;
    for (std::size_t i = first; i < std::min(n, first + workers); ++i) {
      futs.push_back(std::async(std::launch::async, run_variant,
                                kActiveActions[i]));
    }
    for (std::size_t i = 0; i < futs.size(); ++i) parts[first + i] = futs[i].get();
  }

  MatrixResult result;
  for (Partial& p : parts) {
    result.rows.push_back(p.row);
    result.ledger.Append(p.ledger);
  }
  return result;
}

double RateEstimate::sigma() const {
  if (trials == 0) return 0;
  return std::sqrt(expected * (1 - expected) / static_cast<double>(trials));
}

bool RateEstimate::WithinSigmas(double k) const {
  return std::abs(rate() - expected) <= k * sigma();
}

namespace {

// Records the first response seen for each line and hands it back on
// every later read of that line.
class ReplayEverything : public dram::BusInterposer {
 public:
  void OnReadData(const dram::CommandMsg& msg, dram::ReadBurst& burst,
                  const dram::BusContext& ctx) override {
    (void)ctx;
    const std::uint64_t key = msg.addr.Pack();
    auto it = recorded_.find(key);
    if (it == recorded_.end()) {
      recorded_.emplace(key, burst);
      return;
    }
    burst = it->second;
    ++replays_;
  }
  std::uint64_t replays() const { return replays_; }

 private:
  std::unordered_map<std::uint64_t, dram::ReadBurst> recorded_;
  std::uint64_t replays_ = 0;
};

}  // namespace

RateEstimate ReplayFalseAccepts(const ctrl::SimConfig& base,
                                std::uint64_t attempts, std::uint64_t seed) {
  ctrl::SimConfig cfg = base;
  cfg.seed = seed;
  cfg.controller.halt_on_failure = false;
  ctrl::System sys(cfg);
  sys.Boot();

  constexpr unsigned kLines = 64;
  std::vector<std::uint64_t> addrs;
  for (unsigned i = 0; i < kLines; ++i) {
    addrs.push_back(i * 4099 * dram::Geometry::kLineBytes);
  }
  for (std::uint64_t a : addrs) {
    sys.Submit(stats::TraceEvent{stats::AccessKind::kWrite, a, 0});
  }
  sys.Drain();

  ReplayEverything replay;
  sys.set_interposer(&replay);
  for (std::uint64_t a : addrs) {
    sys.Submit(stats::TraceEvent{stats::AccessKind::kRead, a, 0});
  }
  sys.Drain();

  RateEstimate est;
  est.expected = std::ldexp(1.0, -static_cast<int>(cfg.security.mac_width));
  sys.set_read_observer([&](const ctrl::ReadCompletion& c) {
    ++est.trials;
    if (c.verdict == ctrl::Verdict::kPass) ++est.accepts;
  });
  constexpr std::uint64_t kBatch = 4096;
  for (std::uint64_t done = 0; done < attempts;) {
    const std::uint64_t n = std::min(kBatch, attempts - done);
    for (std::uint64_t i = 0; i < n; ++i) {
      sys.Submit(stats::TraceEvent{stats::AccessKind::kRead,
                                   addrs[(done + i) % kLines], 0});
    }
    sys.Drain();
    done += n;
  }
  return est;
}

}  // namespace secddr::adversary
