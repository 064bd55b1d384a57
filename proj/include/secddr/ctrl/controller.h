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

#ifndef SECDDR_CTRL_CONTROLLER_H_
#define SECDDR_CTRL_CONTROLLER_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "secddr/chip/module.h"
#include "secddr/ctrl/host_channel.h"
#include "secddr/dram/bus.h"
#include "secddr/dram/channel.h"
#include "secddr/schemes/line_codec.h"
#include "secddr/schemes/metadata_cache.h"
#include "secddr/schemes/policy.h"
#include "secddr/stats/trace.h"

namespace secddr::ctrl {

using dram::Cycle;

struct ControllerConfig {
  unsigned read_queue_entries = 64;
  unsigned write_queue_entries = 64;
  unsigned drain_high = 48;
  unsigned drain_low = 16;
  // Front-end window: demand reads in flight before issue stalls.
  unsigned max_outstanding_reads = 16;
  std::uint64_t metadata_cache_bytes = 131072;
  unsigned metadata_cache_ways = 8;
  unsigned cpu_mhz = 3200;
  unsigned crypt_mac_cycles = 40;  // processor cycles
  unsigned alert_delay = 20;       // bus cycles from write data to alert
  bool halt_on_failure = false;
};

enum class Verdict { kPass, kMacFail };

enum class DetectionKind {
  kMacFail,        // demand read failed verification
  kMetadataFail,   // fetched counter or tree line failed verification
  kEwcrcAlert,     // ECC chip refused a write
  kChannelReject,  // module refused a write on an authenticated channel
};
const char* DetectionKindName(DetectionKind k);

struct DetectionEvent {
  Cycle at = 0;  // bus cycles
  DetectionKind kind = DetectionKind::kMacFail;
  dram::PhysicalAddress addr;
  bool demand = true;
};

struct ReadCompletion {
  std::uint64_t address = 0;
  crypto::Line plaintext{};
  Verdict verdict = Verdict::kPass;
  Cycle arrival = 0;
  Cycle completed = 0;
};

struct ControllerStats {
  std::uint64_t demand_reads = 0;
  std::uint64_t demand_writes = 0;
  std::uint64_t metadata_reads = 0;
  std::uint64_t metadata_writes = 0;
  std::uint64_t verdict_pass = 0;
  std::uint64_t verdict_mac_fail = 0;
  std::uint64_t ewcrc_alerts = 0;
  std::uint64_t channel_rejects = 0;
  std::uint64_t metadata_fails = 0;
  std::uint64_t write_retries = 0;
  std::uint64_t write_failures = 0;
  std::uint64_t column_commands = 0;
  std::uint64_t activates = 0;
  Cycle last_completion = 0;
  // Demand-read latency, processor cycles, in completion order.
  std::vector<std::uint64_t> read_latency_cpu;
};

// Processor-side memory controller of one channel: admission from a trace
// front end, FR-FCFS scheduling with read priority and watermark write
// drain, the scheme's metadata walk through the metadata cache, and the
// security pipeline (encryption, MACs, channel framing, verification).
//
// Functional effects happen when a column command issues; completion times
// are computed from the channel's bus intervals and the crypto latency.
class MemoryController {
 public:
  MemoryController(const ControllerConfig& config,
                   const dram::Geometry& geometry, dram::DramChannel& channel,
                   chip::DimmModule& module, HostChannel& host,
                   const schemes::SchemePolicy& policy);

  void set_codec(const schemes::LineCodec* codec) { codec_ = codec; }
  void set_interposer(dram::BusInterposer* i) { interposer_ = i; }
  void set_read_observer(std::function<void(const ReadCompletion&)> f) {
    observer_ = std::move(f);
  }

  // Queues a demand access behind earlier submissions.
  void Submit(const stats::TraceEvent& event, const crypto::Line& payload);
  // Simulates until every submitted access has completed (or a failure
  // halted the run).
  void RunUntilIdle();
  // Lets time pass with nothing to do.
  void AdvanceTo(Cycle t);
  // Precharges every open bank through the normal command path.
  void CloseAllRows();
  // Forgets functional mirrors and cached metadata after memory is cleared.
  void ResetFunctionalState();

  Cycle now() const { return now_; }
  bool halted() const { return halted_; }
  bool idle() const;
  const ControllerStats& stats() const { return stats_; }
  const std::vector<DetectionEvent>& detections() const {
    return detections_;
  }
  const schemes::MetadataCache& metadata_cache() const { return cache_; }
  std::uint64_t column_transactions() const { return txn_index_; }

  // Version the line was last written with (CTR counter / write version).
  std::uint64_t IssuedVersion(std::uint64_t line) const;
  // Crypto latency converted to bus cycles.
  Cycle crypto_bus_cycles() const { return crypto_bus_; }

 private:
  enum class Origin : std::uint8_t { kDemand, kMetadata };
  enum class EventKind : std::uint8_t { kMetaArrive, kReadDone };

  struct Request {
    std::uint64_t id = 0;
    bool is_write = false;
    Origin origin = Origin::kDemand;
    dram::PhysicalAddress addr;
    std::uint64_t line = 0;        // storage line index
    std::uint64_t byte_addr = 0;   // demand only
    std::uint64_t meta_index = 0;  // metadata only
    std::uint64_t version = 0;     // writes: version carried
    Cycle arrival = 0;
    Cycle ready = 0;               // writes: earliest issue
    int deps_outstanding = 0;
    Cycle deps_done = 0;
    Cycle data_done = dram::kNever;
    bool mac_ok = true;
    bool channel_ok = true;
    bool meta_failed = false;
    bool urgent = false;
    bool retried = false;
    crypto::Line payload{};        // demand writes: plaintext; reads: result
    std::vector<std::uint64_t> waiters;  // metadata reads
  };

  struct Event {
    Cycle t;
    std::uint64_t seq;
    EventKind kind;
    std::uint64_t id;
    bool operator>(const Event& o) const {
      return t != o.t ? t > o.t : seq > o.seq;
    }
  };

  struct Choice {
    bool valid = false;
    Cycle t = 0;
    dram::Command cmd = dram::Command::kActivate;
    std::uint64_t id = 0;
  };

  struct Pending {
    stats::TraceEvent event;
    crypto::Line payload;
  };

  // front end
  Cycle FrontEndTime() const;
  bool FrontEndBlocked(const Pending& p) const;
  void AdmitFrontEnd();
  void AdmitRead(const Pending& p);
  void AdmitWrite(const Pending& p);

  // metadata
  std::uint64_t NewMetaRead(std::uint64_t meta_index);
  void WaitOn(std::uint64_t meta_req, Request& waiter);
  void EnqueueMetaWrite(std::uint64_t meta_index);
  void AttachPlan(const schemes::AccessPlan& plan, Request& r,
                  std::vector<std::uint64_t>& fetch_ids);

  // scheduling
  void UpdateDrainMode();
  Choice Pick();
  Choice PickFrom(bool reads, bool writes, bool urgent_writes_only);
  bool ReadBlocked(const Request& r) const;
  bool WriteBlocked(const Request& r) const;
  std::size_t BankSlot(const dram::PhysicalAddress& a) const;
  void Issue(const Choice& c);
  void IssueRead(Request& r, Cycle t);
  void IssueWrite(Request& r, Cycle t);
  void WireRowCommand(dram::Command cmd, const dram::PhysicalAddress& addr);

  // bookkeeping
  void Enqueue(Request r);
  void Dequeue(Request& r);
  void PushEvent(Cycle t, EventKind kind, std::uint64_t id);
  void ProcessEvents();
  void ScheduleReadDone(Request& r);
  void FinishRead(Request& r, Cycle t);
  void Detect(Cycle t, DetectionKind kind, const dram::PhysicalAddress& a,
              bool demand);
  Cycle ToBus(std::uint64_t cpu_cycles) const;

  ControllerConfig config_;
  dram::Geometry geometry_;
  dram::DramChannel& channel_;
  chip::DimmModule& module_;
  HostChannel& host_;
  const schemes::SchemePolicy& policy_;
  const schemes::LineCodec* codec_ = nullptr;
  dram::BusInterposer* interposer_ = nullptr;
  std::function<void(const ReadCompletion&)> observer_;
  schemes::MetadataCache cache_;

  Cycle now_ = 0;
  Cycle crypto_bus_ = 0;
  bool draining_ = false;
  bool halted_ = false;
  std::uint64_t next_id_ = 1;
  std::uint64_t event_seq_ = 0;
  std::uint64_t txn_index_ = 0;

  std::deque<Pending> frontend_;
  Cycle last_admit_ = dram::kNever;
  unsigned outstanding_reads_ = 0;

  std::unordered_map<std::uint64_t, Request> reqs_;
  std::vector<std::uint64_t> read_q_;
  std::vector<std::uint64_t> write_q_;
  std::unordered_map<std::uint64_t, std::deque<std::uint64_t>> line_pending_;
  std::unordered_map<std::uint64_t, std::uint64_t> inflight_meta_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> events_;
  std::vector<bool> force_reopen_;

  // Functional mirrors: planned and issued versions of data lines, and of
  // metadata lines (current and last written to memory).
  std::unordered_map<std::uint64_t, std::uint64_t> data_version_;
  std::unordered_map<std::uint64_t, std::uint64_t> issued_version_;
  std::unordered_map<std::uint64_t, std::uint64_t> meta_version_;
  std::unordered_map<std::uint64_t, std::uint64_t> meta_written_;

  ControllerStats stats_;
  std::vector<DetectionEvent> detections_;
};

}  // namespace secddr::ctrl

#endif  // SECDDR_CTRL_CONTROLLER_H_
