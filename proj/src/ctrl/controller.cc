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

#include "secddr/ctrl/controller.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "secddr/dram/geometry.h"

namespace secddr::ctrl {
namespace {

constexpr Cycle kUnset = std::numeric_limits<Cycle>::max() / 4;

void EraseId(std::vector<std::uint64_t>& q, std::uint64_t id) {
  auto it = std::find(q.begin(), q.end(), id);
  if (it != q.end()) q.erase(it);
}

}  // namespace

const char* DetectionKindName(DetectionKind k) {
  switch (k) {
    case DetectionKind::kMacFail:
      return "MAC_FAIL";
    case DetectionKind::kMetadataFail:
      return "METADATA_FAIL";
    case DetectionKind::kEwcrcAlert:
      return "EWCRC_ALERT";
    case DetectionKind::kChannelReject:
      return "CHANNEL_REJECT";
  }
  return "?";
}

MemoryController::MemoryController(const ControllerConfig& config,
                                   const dram::Geometry& geometry,
                                   dram::DramChannel& channel,
                                   chip::DimmModule& module, HostChannel& host,
                                   const schemes::SchemePolicy& policy)
    : config_(config),
      geometry_(geometry),
      channel_(channel),
      module_(module),
      host_(host),
      policy_(policy),
      cache_(config.metadata_cache_bytes, 64, config.metadata_cache_ways) {
  if (config_.drain_low >= config_.drain_high ||
      config_.drain_high > config_.write_queue_entries) {
    throw std::invalid_argument("write drain watermarks out of order");
  }
  if (config_.max_outstanding_reads == 0) {
    throw std::invalid_argument("max_outstanding_reads must be positive");
  }
  crypto_bus_ = ToBus(config_.crypt_mac_cycles);
  force_reopen_.assign(std::size_t{geometry_.ranks} *
                           geometry_.banks_per_rank(),
                       false);
}

Cycle MemoryController::ToBus(std::uint64_t cpu_cycles) const {
  const std::uint64_t bus = channel_.timing().bus_mhz;
  const std::uint64_t cpu = config_.cpu_mhz;
  return static_cast<Cycle>((cpu_cycles * bus + cpu - 1) / cpu);
}

std::size_t MemoryController::BankSlot(const dram::PhysicalAddress& a) const {
  return (std::size_t{a.rank} * geometry_.bank_groups + a.bank_group) *
             geometry_.banks_per_group +
         a.bank;
}

std::uint64_t MemoryController::IssuedVersion(std::uint64_t line) const {
  auto it = issued_version_.find(line);
  return it == issued_version_.end() ? 0 : it->second;
}

bool MemoryController::idle() const {
  return frontend_.empty() && reqs_.empty() && events_.empty();
}

void MemoryController::Submit(const stats::TraceEvent& event,
                              const crypto::Line& payload) {
  frontend_.push_back(Pending{event, payload});
}

// ---- front end -----------------------------------------------------------

bool MemoryController::FrontEndBlocked(const Pending& p) const {
  if (p.event.kind == stats::AccessKind::kRead) {
    if (outstanding_reads_ >= config_.max_outstanding_reads) return true;
    if (read_q_.size() >= config_.read_queue_entries) return true;
    if (p.event.dependent && outstanding_reads_ > 0) return true;
    return false;
  }
  return write_q_.size() >= config_.write_queue_entries;
}

Cycle MemoryController::FrontEndTime() const {
  if (frontend_.empty()) return kUnset;
  const Pending& head = frontend_.front();
  const Cycle t = last_admit_ == dram::kNever
                      ? 0
                      : last_admit_ + ToBus(head.event.gap);
  if (t > now_) return t;
  return FrontEndBlocked(head) ? kUnset : now_;
}

void MemoryController::AdmitFrontEnd() {
  while (!frontend_.empty() && !halted_) {
    const Pending& head = frontend_.front();
    const Cycle t = last_admit_ == dram::kNever
                        ? 0
                        : last_admit_ + ToBus(head.event.gap);
    if (t > now_ || FrontEndBlocked(head)) return;
    if (head.event.kind == stats::AccessKind::kRead) {
      AdmitRead(head);
    } else {
      AdmitWrite(head);
    }
    last_admit_ = now_;
    frontend_.pop_front();
  }
}

void MemoryController::AttachPlan(const schemes::AccessPlan& plan, Request& r,
                                  std::vector<std::uint64_t>& fetch_ids) {
  for (std::uint64_t idx : plan.fetches) {
    auto it = inflight_meta_.find(idx);
    if (cache_.enabled() && it != inflight_meta_.end()) {
      fetch_ids.push_back(it->second);
    } else {
      fetch_ids.push_back(NewMetaRead(idx));
    }
  }
  if (plan.stopped_at && cache_.enabled()) {
    // A hit on a line whose fill is still on its way waits for the fill.
    auto it = inflight_meta_.find(*plan.stopped_at);
    if (it != inflight_meta_.end()) fetch_ids.push_back(it->second);
  }
  for (std::uint64_t idx : plan.writebacks) EnqueueMetaWrite(idx);
  (void)r;
}

void MemoryController::AdmitRead(const Pending& p) {
  Request r;
  r.is_write = false;
  r.origin = Origin::kDemand;
  r.byte_addr = p.event.address & ~std::uint64_t{63};
  r.addr = dram::DecodeAddress(r.byte_addr, geometry_);
  r.line = dram::LineIndex(r.addr, geometry_);
  r.arrival = now_;

  const schemes::AccessPlan plan = policy_.PlanDemandRead(r.line, cache_);
  std::vector<std::uint64_t> fetch_ids;
  AttachPlan(plan, r, fetch_ids);
  r.id = next_id_++;
  for (std::uint64_t f : fetch_ids) WaitOn(f, r);

  ++stats_.demand_reads;
  ++outstanding_reads_;
  Enqueue(std::move(r));
}

void MemoryController::AdmitWrite(const Pending& p) {
  Request r;
  r.is_write = true;
  r.origin = Origin::kDemand;
  r.byte_addr = p.event.address & ~std::uint64_t{63};
  r.addr = dram::DecodeAddress(r.byte_addr, geometry_);
  r.line = dram::LineIndex(r.addr, geometry_);
  r.arrival = now_;
  r.payload = p.payload;
  r.version = ++data_version_[r.line];

  const schemes::AccessPlan plan = policy_.PlanDemandWrite(r.line, cache_);
  for (std::uint64_t idx : plan.updated) ++meta_version_[idx];
  std::vector<std::uint64_t> fetch_ids;
  AttachPlan(plan, r, fetch_ids);
  r.id = next_id_++;
  for (std::uint64_t f : fetch_ids) WaitOn(f, r);
  r.ready = r.deps_outstanding == 0 ? now_ + crypto_bus_ : kUnset;

  ++stats_.demand_writes;
  Enqueue(std::move(r));
}

// ---- metadata ------------------------------------------------------------

std::uint64_t MemoryController::NewMetaRead(std::uint64_t meta_index) {
  Request m;
  m.id = next_id_++;
  m.is_write = false;
  m.origin = Origin::kMetadata;
  m.meta_index = meta_index;
  m.addr = dram::MetadataAddress(meta_index, geometry_);
  m.line = dram::LineIndex(m.addr, geometry_);
  m.arrival = now_;
  const std::uint64_t id = m.id;
  inflight_meta_[meta_index] = id;
  Enqueue(std::move(m));
  return id;
}

void MemoryController::WaitOn(std::uint64_t meta_req, Request& waiter) {
  reqs_.at(meta_req).waiters.push_back(waiter.id);
  ++waiter.deps_outstanding;
}

void MemoryController::EnqueueMetaWrite(std::uint64_t meta_index) {
  Request m;
  m.id = next_id_++;
  m.is_write = true;
  m.origin = Origin::kMetadata;
  m.meta_index = meta_index;
  m.addr = dram::MetadataAddress(meta_index, geometry_);
  m.line = dram::LineIndex(m.addr, geometry_);
  m.arrival = now_;
  m.version = meta_version_[meta_index];
  m.ready = now_;
  Enqueue(std::move(m));
}

// ---- queues --------------------------------------------------------------

void MemoryController::Enqueue(Request r) {
  const std::uint64_t id = r.id;
  auto& order = line_pending_[r.line];
  if (!r.is_write) {
    // Older writes to the same line must drain before this read can go.
    for (std::uint64_t older : order) {
      Request& o = reqs_.at(older);
      if (o.is_write) o.urgent = true;
    }
  }
  order.push_back(id);
  (r.is_write ? write_q_ : read_q_).push_back(id);
  reqs_.emplace(id, std::move(r));
}

void MemoryController::Dequeue(Request& r) {
  EraseId(r.is_write ? write_q_ : read_q_, r.id);
  auto it = line_pending_.find(r.line);
  if (it == line_pending_.end()) return;
  auto& order = it->second;
  order.erase(std::find(order.begin(), order.end(), r.id));
  if (order.empty()) line_pending_.erase(it);
}

bool MemoryController::ReadBlocked(const Request& r) const {
  const auto& order = line_pending_.at(r.line);
  for (std::uint64_t id : order) {
    if (id == r.id) return false;
    if (reqs_.at(id).is_write) return true;
  }
  return false;
}

bool MemoryController::WriteBlocked(const Request& r) const {
  return line_pending_.at(r.line).front() != r.id;
}

// ---- scheduling ----------------------------------------------------------

void MemoryController::UpdateDrainMode() {
  if (write_q_.size() >= config_.drain_high) draining_ = true;
  if (draining_ && write_q_.size() <= config_.drain_low) draining_ = false;
}

MemoryController::Choice MemoryController::PickFrom(bool reads, bool writes,
                                                    bool urgent_only) {
  struct Candidate {
    const Request* r;
    bool hit;
  };
  std::vector<Candidate> cands;
  cands.reserve(read_q_.size() + write_q_.size());
  std::vector<bool> bank_has_hit(force_reopen_.size(), false);

  auto consider = [&](const Request& r) {
    const dram::BankState& b = channel_.bank(r.addr);
    const std::size_t slot = BankSlot(r.addr);
    const bool hit = b.open_row && *b.open_row == r.addr.row &&
                     !force_reopen_[slot];
    if (hit) bank_has_hit[slot] = true;
    cands.push_back({&r, hit});
  };
  if (reads) {
    for (std::uint64_t id : read_q_) {
      const Request& r = reqs_.at(id);
      if (!ReadBlocked(r)) consider(r);
    }
  }
  if (writes) {
    for (std::uint64_t id : write_q_) {
      const Request& r = reqs_.at(id);
      if (r.deps_outstanding > 0 || WriteBlocked(r)) continue;
      if (urgent_only && !r.urgent) continue;
      consider(r);
    }
  }

  Choice best;
  std::tuple<Cycle, int, int, std::uint64_t> best_key{};
  for (const Candidate& c : cands) {
    const Request& r = *c.r;
    const dram::BankState& b = channel_.bank(r.addr);
    const std::size_t slot = BankSlot(r.addr);
    dram::Command cmd;
    if (c.hit) {
      cmd = r.is_write ? dram::Command::kWrite : dram::Command::kRead;
    } else if (b.open_row) {
      // Keep the row open while someone still wants it.
      if (bank_has_hit[slot]) continue;
      cmd = dram::Command::kPrecharge;
    } else {
      cmd = dram::Command::kActivate;
    }
    Cycle t = channel_.Earliest(cmd, r.addr, now_);
    if (r.is_write) t = std::max(t, r.ready);
    const auto key = std::make_tuple(
        t, c.hit ? 0 : 1, r.origin == Origin::kMetadata ? 0 : 1, r.id);
    if (!best.valid || key < best_key) {
      best = Choice{true, t, cmd, r.id};
      best_key = key;
    }
  }
  return best;
}

MemoryController::Choice MemoryController::Pick() {
  UpdateDrainMode();
  Choice c;
  if (draining_) {
    c = PickFrom(false, true, false);
  } else {
    bool read_issuable = false;
    for (std::uint64_t id : read_q_) {
      if (!ReadBlocked(reqs_.at(id))) {
        read_issuable = true;
        break;
      }
    }
    c = PickFrom(true, true, /*urgent_only=*/read_issuable);
  }
  if (!c.valid) c = PickFrom(true, true, false);
  return c;
}

void MemoryController::WireRowCommand(dram::Command cmd,
                                      const dram::PhysicalAddress& addr) {
  dram::CommandMsg msg{cmd, addr};
  const dram::BusContext ctx{txn_index_, now_};
  dram::Disposition d = dram::Disposition::kForward;
  if (interposer_ != nullptr) d = interposer_->OnCommand(msg, ctx);
  if (d != dram::Disposition::kDrop) module_.OnCommand(msg);
}

void MemoryController::Issue(const Choice& c) {
  Request& r = reqs_.at(c.id);
  switch (c.cmd) {
    case dram::Command::kActivate:
      channel_.Issue(c.cmd, r.addr, c.t);
      force_reopen_[BankSlot(r.addr)] = false;
      ++stats_.activates;
      WireRowCommand(c.cmd, r.addr);
      break;
    case dram::Command::kPrecharge:
      channel_.Issue(c.cmd, r.addr, c.t);
      WireRowCommand(c.cmd, r.addr);
      break;
    case dram::Command::kRead:
      IssueRead(r, c.t);
      break;
    case dram::Command::kWrite:
      IssueWrite(r, c.t);
      break;
  }
}

void MemoryController::IssueRead(Request& r, Cycle t) {
  if (codec_ == nullptr) throw std::logic_error("controller has no codec");
  const dram::IssueResult res = channel_.Issue(dram::Command::kRead, r.addr, t);
  ++stats_.column_commands;
  Dequeue(r);

  dram::CommandMsg msg{dram::Command::kRead, r.addr};
  const dram::BusContext ctx{txn_index_++, now_};
  dram::Disposition d = dram::Disposition::kForward;
  if (interposer_ != nullptr) d = interposer_->OnCommand(msg, ctx);
  dram::ReadBurst burst;
  if (d != dram::Disposition::kDrop) {
    if (auto b = module_.Read(msg)) burst = *b;
  }
  if (interposer_ != nullptr) interposer_->OnReadData(msg, burst, ctx);

  const HostChannel::Opened opened = host_.OpenRead(r.addr, burst);
  r.channel_ok = opened.channel_ok;
  r.data_done = res.bus->end;

  if (r.origin == Origin::kDemand) {
    const std::uint64_t version = IssuedVersion(r.line);
    r.mac_ok = codec_->CheckMac(r.addr, version, burst.data, opened.mac);
    r.payload = codec_->Decrypt(r.addr, version, burst.data);
    if (r.deps_outstanding == 0) ScheduleReadDone(r);
    return;
  }

  ++stats_.metadata_reads;
  const schemes::SchemeTraits& tr = policy_.traits();
  bool ok = opened.channel_ok;
  if (tr.metadata_via_channel) {
    ok = ok && codec_->MetadataMac(r.addr, burst.data) == opened.mac;
  }
  if (tr.metadata_tree_checked) {
    auto it = meta_written_.find(r.meta_index);
    const std::uint64_t v = it == meta_written_.end() ? 0 : it->second;
    ok = ok && codec_->MetadataContent(r.meta_index, v) == burst.data;
  }
  r.mac_ok = ok;
  PushEvent(r.data_done, EventKind::kMetaArrive, r.id);
}

void MemoryController::IssueWrite(Request& r, Cycle t) {
  if (codec_ == nullptr) throw std::logic_error("controller has no codec");
  const dram::IssueResult res =
      channel_.Issue(dram::Command::kWrite, r.addr, t);
  ++stats_.column_commands;
  Dequeue(r);

  crypto::Line stored;
  std::uint64_t mac = 0;
  if (r.origin == Origin::kDemand) {
    stored = codec_->Encrypt(r.addr, r.version, r.payload);
    mac = codec_->StoredMac(r.addr, r.version, stored);
  } else {
    stored = codec_->MetadataContent(r.meta_index, r.version);
    mac = codec_->MetadataMac(r.addr, stored);
    ++stats_.metadata_writes;
  }
  dram::WriteBurst burst = host_.FrameWrite(r.addr, stored, mac);

  dram::CommandMsg msg{dram::Command::kWrite, r.addr};
  const dram::BusContext ctx{txn_index_++, now_};
  dram::Disposition d = dram::Disposition::kForward;
  if (interposer_ != nullptr) d = interposer_->OnCommand(msg, ctx);
  chip::WriteOutcome outcome = chip::WriteOutcome::kStored;
  switch (d) {
    case dram::Disposition::kForward:
      if (interposer_ != nullptr) interposer_->OnWriteData(msg, burst, ctx);
      outcome = module_.Write(msg, burst);
      break;
    case dram::Disposition::kDrop:
      break;
    case dram::Disposition::kConvertToRead:
      (void)module_.Read(dram::CommandMsg{dram::Command::kRead, msg.addr});
      break;
  }

  const Cycle data_end = res.bus->end;
  stats_.last_completion = std::max(stats_.last_completion, data_end);
  const bool rejected = outcome == chip::WriteOutcome::kEwcrcReject ||
                        outcome == chip::WriteOutcome::kMacReject;
  if (!rejected) {
    host_.CommitWrite(r.addr.rank);
    if (r.origin == Origin::kDemand) {
      issued_version_[r.line] = r.version;
    } else {
      meta_written_[r.meta_index] = r.version;
    }
    reqs_.erase(r.id);
    return;
  }

  // The module refused the data and signalled the controller. Neither side
  // advanced its counter; reopen the row and try once more.
  const Cycle alert_at = data_end + config_.alert_delay;
  const bool ewcrc = outcome == chip::WriteOutcome::kEwcrcReject;
  Detect(alert_at,
         ewcrc ? DetectionKind::kEwcrcAlert : DetectionKind::kChannelReject,
         r.addr, r.origin == Origin::kDemand);
  for (std::uint32_t k = 0; k < module_.rank_count(); ++k) {
    if (chip::KeyedRank* kr = module_.keyed_rank(k)) kr->ClearAlert();
  }
  force_reopen_[BankSlot(r.addr)] = true;
  if (r.retried) {
    ++stats_.write_failures;
    reqs_.erase(r.id);
    return;
  }
  r.retried = true;
  r.ready = alert_at;
  ++stats_.write_retries;
  write_q_.push_back(r.id);
  line_pending_[r.line].push_front(r.id);
}

// ---- events --------------------------------------------------------------

void MemoryController::PushEvent(Cycle t, EventKind kind, std::uint64_t id) {
  events_.push(Event{t, event_seq_++, kind, id});
}

void MemoryController::ScheduleReadDone(Request& r) {
  // One crypto latency after the later of data and metadata. Under CTR the
  // pad is generated while the data is in flight, so the latency left on
  // the path is the MAC check; under XTS it is the decryption.
  const Cycle done = std::max(r.data_done, r.deps_done) + crypto_bus_;
  PushEvent(done, EventKind::kReadDone, r.id);
}

void MemoryController::Detect(Cycle t, DetectionKind kind,
                              const dram::PhysicalAddress& a, bool demand) {
  detections_.push_back(DetectionEvent{t, kind, a, demand});
  switch (kind) {
    case DetectionKind::kMacFail:
      break;
    case DetectionKind::kMetadataFail:
      ++stats_.metadata_fails;
      break;
    case DetectionKind::kEwcrcAlert:
      ++stats_.ewcrc_alerts;
      break;
    case DetectionKind::kChannelReject:
      ++stats_.channel_rejects;
      break;
  }
  if (config_.halt_on_failure) halted_ = true;
}

void MemoryController::FinishRead(Request& r, Cycle t) {
  const bool pass = r.mac_ok && r.channel_ok && !r.meta_failed;
  ReadCompletion done;
  done.address = r.byte_addr;
  done.plaintext = r.payload;
  done.verdict = pass ? Verdict::kPass : Verdict::kMacFail;
  done.arrival = r.arrival;
  done.completed = t;
  if (pass) {
    ++stats_.verdict_pass;
  } else {
    ++stats_.verdict_mac_fail;
    Detect(t, DetectionKind::kMacFail, r.addr, true);
  }
  const std::uint64_t bus = channel_.timing().bus_mhz;
  stats_.read_latency_cpu.push_back(
      static_cast<std::uint64_t>(t - r.arrival) * config_.cpu_mhz / bus);
  stats_.last_completion = std::max(stats_.last_completion, t);
  --outstanding_reads_;
  if (observer_) observer_(done);
}

void MemoryController::ProcessEvents() {
  while (!events_.empty() && events_.top().t <= now_) {
    const Event e = events_.top();
    events_.pop();
    auto it = reqs_.find(e.id);
    if (it == reqs_.end()) continue;
    Request& r = it->second;
    if (e.kind == EventKind::kReadDone) {
      FinishRead(r, e.t);
      reqs_.erase(it);
      continue;
    }
    // Metadata fill arrived.
    const bool failed = !r.mac_ok;
    if (failed) Detect(e.t, DetectionKind::kMetadataFail, r.addr, false);
    for (std::uint64_t wid : r.waiters) {
      auto wit = reqs_.find(wid);
      if (wit == reqs_.end()) continue;
      Request& w = wit->second;
      --w.deps_outstanding;
      w.deps_done = std::max(w.deps_done, e.t);
      if (failed) w.meta_failed = true;
      if (w.deps_outstanding > 0) continue;
      if (w.is_write) {
        w.ready = w.deps_done + crypto_bus_;
      } else if (w.data_done != dram::kNever) {
        ScheduleReadDone(w);
      }
    }
    auto inf = inflight_meta_.find(r.meta_index);
    if (inf != inflight_meta_.end() && inf->second == r.id) {
      inflight_meta_.erase(inf);
    }
    reqs_.erase(it);
  }
}

// ---- main loop -----------------------------------------------------------

void MemoryController::RunUntilIdle() {
  while (!halted_) {
    ProcessEvents();
    if (halted_) break;
    AdmitFrontEnd();
    if (idle()) break;

    const Choice c = (read_q_.empty() && write_q_.empty()) ? Choice{} : Pick();
    const Cycle t_event = events_.empty() ? kUnset : events_.top().t;
    const Cycle t_front = FrontEndTime();
    const Cycle t_other = std::min(t_event, t_front);
    if (c.valid && c.t < t_other) {
      now_ = std::max(now_, c.t);
      Issue(c);
    } else if (t_other != kUnset) {
      now_ = std::max(now_, t_other);
    } else if (c.valid) {
      now_ = std::max(now_, c.t);
      Issue(c);
    } else {
      throw std::logic_error("memory controller made no progress");
    }
  }
}

void MemoryController::AdvanceTo(Cycle t) { now_ = std::max(now_, t); }

void MemoryController::CloseAllRows() {
  if (!reqs_.empty() || !events_.empty()) {
    throw std::logic_error("CloseAllRows with requests in flight");
  }
  dram::PhysicalAddress a;
  for (a.rank = 0; a.rank < geometry_.ranks; ++a.rank) {
    for (a.bank_group = 0; a.bank_group < geometry_.bank_groups;
         ++a.bank_group) {
      for (a.bank = 0; a.bank < geometry_.banks_per_group; ++a.bank) {
        if (!channel_.bank(a).open_row) continue;
        const Cycle t = channel_.Earliest(dram::Command::kPrecharge, a, now_);
        channel_.Issue(dram::Command::kPrecharge, a, t);
        now_ = t;
        WireRowCommand(dram::Command::kPrecharge, a);
      }
    }
  }
  std::fill(force_reopen_.begin(), force_reopen_.end(), false);
}

void MemoryController::ResetFunctionalState() {
  if (!reqs_.empty()) {
    throw std::logic_error("ResetFunctionalState with requests in flight");
  }
  data_version_.clear();
  issued_version_.clear();
  meta_version_.clear();
  meta_written_.clear();
  inflight_meta_.clear();
  cache_ = schemes::MetadataCache(config_.metadata_cache_bytes, 64,
                                  config_.metadata_cache_ways);
  halted_ = false;
}

}  // namespace secddr::ctrl
