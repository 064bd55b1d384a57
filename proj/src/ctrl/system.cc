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

#include "secddr/ctrl/system.h"

#include <stdexcept>
#include <utility>

#include "secddr/chip/ecc_chip.h"
#include "secddr/dram/geometry.h"
#include "secddr/schemes/invisimem.h"

namespace secddr::ctrl {
namespace {

std::uint32_t CpuToBus(unsigned cpu_cycles, unsigned bus_mhz,
                       unsigned cpu_mhz) {
  const std::uint64_t num = std::uint64_t{cpu_cycles} * bus_mhz;
  return static_cast<std::uint32_t>((num + cpu_mhz - 1) / cpu_mhz);
}

}  // namespace

dram::DdrTimingParams EffectiveTiming(const SimConfig& config) {
  const schemes::SchemeTraits tr =
      schemes::TraitsOf(config.scheme, config.security.secddr_write_otp_cycles,
                        config.security.invisimem_extra_mac_cycles);
  dram::DdrTimingParams t = config.timing;
  if (tr.write_burst_cycles) t.write_burst_cycles = *tr.write_burst_cycles;
  if (tr.bus_mhz) t.bus_mhz = *tr.bus_mhz;
  const std::uint32_t module_mac =
      tr.module_mac_cpu_cycles == 0
          ? 0
          : CpuToBus(tr.module_mac_cpu_cycles, t.bus_mhz,
                     config.controller.cpu_mhz);
  t.read_release_delay = module_mac;
  t.write_commit_delay = tr.write_commit_delay + module_mac;
  return t;
}

System::System(SimConfig config)
    : config_(std::move(config)),
      traits_(schemes::TraitsOf(config_.scheme,
                                config_.security.secddr_write_otp_cycles,
                                config_.security.invisimem_extra_mac_cycles)),
      geometry_(config_.geometry),
      timing_(EffectiveTiming(config_)),
      width_(config_.security.mac_width),
      rng_(config_.seed) {
  if (geometry_.channels != 1) {
    throw std::invalid_argument("one channel per simulation instance");
  }
  geometry_.metadata_rows = 0;
  policy_ = std::make_unique<schemes::SchemePolicy>(
      traits_, geometry_.capacity_bytes(), config_.security.crypt_mac_cycles);
  geometry_.metadata_rows = policy_->layout().RowsNeeded(geometry_);
  dram::ValidateGeometry(geometry_);
  dram::ValidateTiming(timing_);

  channel_ = std::make_unique<dram::DramChannel>(geometry_, timing_);
  if (config_.audit_timing) {
    auditor_ = std::make_unique<dram::TimingAuditor>(geometry_, timing_);
    channel_->set_auditor(auditor_.get());
  }

  const attest::Seed ca_seed = config_.attest.ca_seed.value_or(
      attest::SeedFrom(config_.seed, "certificate-authority"));
  ca_ = std::make_unique<attest::CertificateAuthority>(
      attest::CertificateAuthority::FromSeed(ca_seed));

  std::vector<std::unique_ptr<chip::RankLogic>> ranks;
  for (std::uint32_t r = 0; r < geometry_.ranks; ++r) {
    ranks.push_back(MakeRank(r, 0));
  }
  module_ = std::make_unique<chip::DimmModule>(geometry_, std::move(ranks));

  attest::AttestPolicy ap;
  ap.ca_root = ca_->root();
  ap.revoked_serials = config_.attest.revoked_serials;
  if (config_.attest.pin_certificates) ap.pinned = issued_;
  attestor_ = std::make_unique<attest::ProcessorAttestor>(ap, rng_());

  host_ = std::make_unique<HostChannel>(traits_.channel, geometry_, width_);
  ControllerConfig cc = config_.controller;
  cc.crypt_mac_cycles = config_.security.crypt_mac_cycles;
  controller_ = std::make_unique<MemoryController>(cc, geometry_, *channel_,
                                                   *module_, *host_, *policy_);
  controller_->set_read_observer([this](const ReadCompletion& c) {
    last_read_ = c;
    if (user_observer_) user_observer_(c);
  });
}

System::~System() = default;

std::unique_ptr<chip::RankLogic> System::MakeRank(std::uint32_t r,
                                                  std::uint64_t generation) {
  if (traits_.channel == schemes::ChannelKind::kPlain) {
    return std::make_unique<chip::PassiveRank>();
  }
  attest::Seed seed;
  if (generation == 0 && r < config_.attest.chip_seeds.size()) {
    seed = config_.attest.chip_seeds[r];
  } else {
    seed = attest::SeedFrom(config_.seed ^ (generation << 32) ^ r,
                            "endorsement-key");
  }
  const std::uint64_t serial =
      config_.attest.first_serial + generation * geometry_.ranks + r;
  attest::EndorsementIdentity id =
      attest::MakeIdentity(*ca_, seed, config_.attest.vendor, serial);
  issued_.push_back(id.certificate);
  if (traits_.channel == schemes::ChannelKind::kInvisimem) {
    return std::make_unique<schemes::InvisimemDimm>(r, std::move(id), width_);
  }
  return std::make_unique<chip::EccChip>(r, std::move(id), geometry_, width_);
}

crypto::TransactionCounter System::NextInitialCounter() {
  if (config_.security.counter_init == CounterInit::kRandom) {
    return crypto::TransactionCounter{rng_()};
  }
  // A register that only moves forward across boots.
  return crypto::TransactionCounter{boots_ << 40};
}

BootReport System::Boot(attest::HandshakeInterposer* mitm,
                        bool clear_memory) {
  if (booted_) throw std::logic_error("Boot: already running");
  ++boots_;
  const schemes::ProcessorKeys keys{
      crypto::SecretKey::FromWords(rng_(), rng_()),
      crypto::SecretKey::FromWords(rng_(), rng_())};
  codec_ = std::make_shared<const schemes::LineCodec>(traits_, keys, width_);
  controller_->set_codec(codec_.get());

  BootReport report;
  if (traits_.channel != schemes::ChannelKind::kPlain) {
    for (std::uint32_t r = 0; r < geometry_.ranks; ++r) {
      chip::KeyedRank* kr = module_->keyed_rank(r);
      if (kr == nullptr) throw std::logic_error("keyed scheme without keys");
      attest::HandshakeResult res =
          attestor_->Run(*kr, NextInitialCounter(), mitm);
      if (res.ok()) {
        host_->InstallEpoch(r, res.transcript->key,
                            res.transcript->initial_counter);
      } else {
        report.ok = false;
      }
      report.ranks.push_back(std::move(res));
    }
  }
  if (!report.ok) {
    host_->PowerDown();
    module_->PowerDown();
    return report;
  }

  if (clear_memory) {
    std::shared_ptr<const schemes::LineCodec> codec = codec_;
    const dram::Geometry g = geometry_;
    module_->storage().Clear(
        [codec, g](const dram::PhysicalAddress& a) -> dram::SecureLine {
          if (dram::IsMetadataAddress(a, g)) {
            return codec->ClearedMetadataLine(
                a, dram::LineIndex(a, g) - g.data_lines());
          }
          return codec->ClearedDataLine(a);
        });
  }
  controller_->ResetFunctionalState();
  booted_ = true;
  return report;
}

void System::Submit(const stats::TraceEvent& event) {
  if (event.kind == stats::AccessKind::kWrite) {
    Submit(event, stats::PayloadFor(event.address, write_seq_));
  } else {
    Submit(event, crypto::Line{});
  }
}

void System::Submit(const stats::TraceEvent& event,
                    const crypto::Line& payload) {
  if (!booted_) throw std::logic_error("Submit before Boot");
  if (event.kind == stats::AccessKind::kWrite) ++write_seq_;
  controller_->Submit(event, payload);
}

void System::Drain() { controller_->RunUntilIdle(); }

void System::Run(const std::vector<stats::TraceEvent>& trace) {
  for (const stats::TraceEvent& e : trace) Submit(e);
  Drain();
}

ReadCompletion System::ReadLine(std::uint64_t address) {
  last_read_.reset();
  Submit(stats::TraceEvent{stats::AccessKind::kRead, address, 0, false});
  Drain();
  if (!last_read_) throw std::logic_error("ReadLine: read did not complete");
  return *last_read_;
}

void System::WriteLine(std::uint64_t address, const crypto::Line& payload) {
  Submit(stats::TraceEvent{stats::AccessKind::kWrite, address, 0, false},
         payload);
  Drain();
}

void System::Sleep() {
  Drain();
  controller_->CloseAllRows();
}

void System::PowerOff() {
  Sleep();
  module_->PowerDown();
  host_->PowerDown();
  booted_ = false;
}

BootReport System::PowerCycle(bool clear_memory,
                              attest::HandshakeInterposer* mitm) {
  PowerOff();
  return Boot(mitm, clear_memory);
}

BootReport System::ReplaceChips(bool clear_memory) {
  PowerOff();
  ++chip_generation_;
  for (std::uint32_t r = 0; r < geometry_.ranks; ++r) {
    module_->ReplaceRank(r, MakeRank(r, chip_generation_));
  }
  if (config_.attest.pin_certificates) {
    // The integrator enters the new certificates.
    attest::AttestPolicy ap = attestor_->policy();
    ap.pinned = issued_;
    attestor_ = std::make_unique<attest::ProcessorAttestor>(ap, rng_());
  }
  return Boot(nullptr, clear_memory);
}

crypto::Line System::PeekPlaintext(std::uint64_t address) const {
  const dram::PhysicalAddress a = dram::DecodeAddress(address, geometry_);
  const dram::SecureLine line = module_->storage().Read(a);
  return codec_->Decrypt(
      a, controller_->IssuedVersion(dram::LineIndex(a, geometry_)), line.data);
}

bool System::CountersInSync() const {
  if (!host_->keyed()) return true;
  for (std::uint32_t r = 0; r < geometry_.ranks; ++r) {
    const chip::KeyedRank* kr =
        dynamic_cast<const chip::KeyedRank*>(&module_->rank(r));
    if (kr == nullptr || kr->counter() != host_->counter(r)) return false;
  }
  return true;
}

void System::set_read_observer(
    std::function<void(const ReadCompletion&)> f) {
  user_observer_ = std::move(f);
}

}  // namespace secddr::ctrl
