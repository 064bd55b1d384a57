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

#ifndef SECDDR_CTRL_SYSTEM_H_
#define SECDDR_CTRL_SYSTEM_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "secddr/attest/handshake.h"
#include "secddr/attest/identity.h"
#include "secddr/chip/module.h"
#include "secddr/ctrl/controller.h"
#include "secddr/ctrl/host_channel.h"
#include "secddr/dram/auditor.h"
#include "secddr/dram/channel.h"
#include "secddr/schemes/line_codec.h"
#include "secddr/schemes/policy.h"
#include "secddr/stats/trace.h"

namespace secddr::ctrl {

enum class CounterInit { kRandom, kMonotonic };

struct SecurityConfig {
  unsigned mac_width = 64;
  unsigned crypt_mac_cycles = 40;            // processor cycles
  unsigned invisimem_extra_mac_cycles = 40;  // processor cycles
  unsigned secddr_write_otp_cycles = 8;      // bus cycles
  CounterInit counter_init = CounterInit::kRandom;
};

struct AttestConfig {
  // CA and chip endorsement seeds; derived from the run seed when unset.
  std::optional<attest::Seed> ca_seed;
  std::vector<attest::Seed> chip_seeds;  // one per rank, or empty
  std::string vendor = "secddr-sim";
  std::uint64_t first_serial = 1000;
  std::set<std::uint64_t> revoked_serials;
  // Require chip certificates to match the ones issued at construction.
  bool pin_certificates = false;
};

struct SimConfig {
  dram::Geometry geometry;
  dram::DdrTimingParams timing;
  ControllerConfig controller;
  schemes::SchemeId scheme = schemes::SchemeId::kSecddrXts;
  SecurityConfig security;
  AttestConfig attest;
  std::uint64_t seed = 1;
  bool audit_timing = false;
};

// Channel timing after the scheme's own requirements are applied.
dram::DdrTimingParams EffectiveTiming(const SimConfig& config);

struct BootReport {
  bool ok = true;
  std::vector<attest::HandshakeResult> ranks;  // keyed channels only
};

// One processor, one channel and its module, wired together. Owns the
// attestation authority, the processor keys of the current boot and the
// power state.
class System {
 public:
  explicit System(SimConfig config);
  ~System();
  System(const System&) = delete;
  System& operator=(const System&) = delete;

  // Fresh processor keys, per-rank key exchange and (unless skipped) the
  // memory clear. On a failed handshake no epoch is installed on the host.
  BootReport Boot(attest::HandshakeInterposer* mitm = nullptr,
                  bool clear_memory = true);
  bool booted() const { return booted_; }

  // Writes carry stats::PayloadFor(address, n) for the n-th submitted write.
  void Submit(const stats::TraceEvent& event);
  void Submit(const stats::TraceEvent& event, const crypto::Line& payload);
  void Drain();
  void Run(const std::vector<stats::TraceEvent>& trace);
  ReadCompletion ReadLine(std::uint64_t address);
  void WriteLine(std::uint64_t address, const crypto::Line& payload);

  // Self-refresh: rows close, the module keeps its cells and counters.
  void Sleep();
  // Power loss: keys are gone on both sides. Boot() must follow.
  void PowerOff();
  BootReport PowerCycle(bool clear_memory = true,
                        attest::HandshakeInterposer* mitm = nullptr);
  // Operator-initiated chip replacement: every keyed rank gets a new
  // endorsement identity; cells are kept until the clear.
  BootReport ReplaceChips(bool clear_memory = true);

  // Plaintext currently held at `address` as the processor would decode it,
  // without going through the channel.
  crypto::Line PeekPlaintext(std::uint64_t address) const;
  bool CountersInSync() const;

  void set_interposer(dram::BusInterposer* i) { controller_->set_interposer(i); }
  void set_read_observer(std::function<void(const ReadCompletion&)> f);

  const SimConfig& config() const { return config_; }
  const schemes::SchemeTraits& traits() const { return traits_; }
  const dram::Geometry& geometry() const { return geometry_; }
  const dram::DdrTimingParams& timing() const { return timing_; }
  MemoryController& controller() { return *controller_; }
  const MemoryController& controller() const { return *controller_; }
  chip::DimmModule& module() { return *module_; }
  const dram::DramChannel& channel() const { return *channel_; }
  HostChannel& host() { return *host_; }
  const HostChannel& host() const { return *host_; }
  const schemes::SchemePolicy& policy() const { return *policy_; }
  const dram::TimingAuditor* auditor() const { return auditor_.get(); }
  const attest::CertificateAuthority& ca() const { return *ca_; }
  std::uint64_t writes_submitted() const { return write_seq_; }

 private:
  std::unique_ptr<chip::RankLogic> MakeRank(std::uint32_t r,
                                            std::uint64_t generation);
  crypto::TransactionCounter NextInitialCounter();

  SimConfig config_;
  schemes::SchemeTraits traits_;
  dram::Geometry geometry_;
  dram::DdrTimingParams timing_;
  crypto::MacWidth width_;
  std::mt19937_64 rng_;

  std::unique_ptr<attest::CertificateAuthority> ca_;
  std::vector<attest::Certificate> issued_;
  std::unique_ptr<attest::ProcessorAttestor> attestor_;
  std::unique_ptr<schemes::SchemePolicy> policy_;
  std::unique_ptr<dram::DramChannel> channel_;
  std::unique_ptr<dram::TimingAuditor> auditor_;
  std::unique_ptr<chip::DimmModule> module_;
  std::unique_ptr<HostChannel> host_;
  std::shared_ptr<const schemes::LineCodec> codec_;
  std::unique_ptr<MemoryController> controller_;

  std::function<void(const ReadCompletion&)> user_observer_;
  std::optional<ReadCompletion> last_read_;
  bool booted_ = false;
  std::uint64_t boots_ = 0;
  std::uint64_t chip_generation_ = 0;
  std::uint64_t write_seq_ = 0;
};

}  // namespace secddr::ctrl

#endif  // SECDDR_CTRL_SYSTEM_H_
