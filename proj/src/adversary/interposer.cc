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

#include "secddr/adversary/interposer.h"

#include <algorithm>
#include <cstdio>
#include <string>

#include "secddr/dram/geometry.h"
#include "secddr/stats/trace.h"

namespace secddr::adversary {
namespace {

std::string Hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

// First eight data bytes and the ECC lane.
std::string Describe(const crypto::Line& data, std::uint64_t ecc) {
  return "data[0:8]=" + Hex64(crypto::LoadLe64(data.data())) +
         " ecc=" + Hex64(ecc);
}

std::string Describe(const dram::CommandMsg& m) {
  return std::string(dram::CommandName(m.cmd)) + " " + m.addr.ToString();
}

bool IsModuleAction(ActionKind k) {
  return k == ActionKind::kFlipStoredBits ||
         k == ActionKind::kSnapshotModule ||
         k == ActionKind::kRestoreModule ||
         k == ActionKind::kSubstituteModuleAcrossWake;
}

}  // namespace

ScriptedAdversary::ScriptedAdversary(AttackScript script, std::uint64_t seed,
                                     chip::DimmModule& module)
    : module_(module), geometry_(module.storage().geometry()), rng_(seed) {
  for (const Trigger& t : script.triggers) Arm(t);
}

void ScriptedAdversary::Arm(const Trigger& trigger) {
  Armed a;
  a.trigger = trigger;
  a.id = ledger_.Open(trigger.action.kind);
  armed_.push_back(std::move(a));
}

bool ScriptedAdversary::Due(const Armed& a,
                            const dram::BusContext& ctx) const {
  const std::uint64_t now = a.trigger.basis == TriggerBasis::kTransaction
                                ? ctx.transaction_index
                                : ctx.now;
  return now >= a.trigger.at;
}

dram::Disposition ScriptedAdversary::OnCommand(dram::CommandMsg& msg,
                                               const dram::BusContext& ctx) {
  dram::Disposition d = dram::Disposition::kForward;
  const bool column =
      msg.cmd == dram::Command::kRead || msg.cmd == dram::Command::kWrite;
  for (Armed& a : armed_) {
    if (a.done) continue;
    if (!a.fired) {
      if (!Due(a, ctx)) continue;
      a.fired = true;
      if (IsModuleAction(a.trigger.action.kind)) {
        ApplyModuleAction(a, ctx.now);
        continue;
      }
    }
    const AttackAction& act = a.trigger.action;
    switch (act.kind) {
      case ActionKind::kCorruptActivateRow: {
        if (msg.cmd != dram::Command::kActivate) break;
        const std::string before = Describe(msg);
        std::uint32_t row = act.new_row.value_or(msg.addr.row);
        while (row == msg.addr.row && geometry_.total_rows() > 1) {
          row = static_cast<std::uint32_t>(
              stats::BoundedDraw(rng_, geometry_.total_rows()));
        }
        msg.addr.row = row;
        ledger_.MarkInjected(a.id, ctx.now, before, Describe(msg));
        a.done = true;
        break;
      }
      case ActionKind::kCorruptColumn: {
        if (!column) break;
        const std::string before = Describe(msg);
        std::uint32_t col = act.new_column.value_or(msg.addr.column);
        while (col == msg.addr.column && geometry_.columns > 1) {
          col = static_cast<std::uint32_t>(
              stats::BoundedDraw(rng_, geometry_.columns));
        }
        msg.addr.column = col;
        ledger_.MarkInjected(a.id, ctx.now, before, Describe(msg));
        a.done = true;
        break;
      }
      case ActionKind::kDropWrite:
        if (msg.cmd != dram::Command::kWrite) break;
        d = dram::Disposition::kDrop;
        ledger_.MarkInjected(a.id, ctx.now, Describe(msg), "dropped");
        a.done = true;
        break;
      case ActionKind::kConvertWriteToRead: {
        if (msg.cmd != dram::Command::kWrite) break;
        d = dram::Disposition::kConvertToRead;
        dram::CommandMsg as_read{dram::Command::kRead, msg.addr};
        ledger_.MarkInjected(a.id, ctx.now, Describe(msg), Describe(as_read));
        a.done = true;
        break;
      }
      case ActionKind::kReplayBusTuple:
        if (!a.target && act.address) {
          a.target = dram::DecodeAddress(*act.address, geometry_);
        }
        break;  // acts on the read data
      default:
        break;
    }
  }
  return d;
}

void ScriptedAdversary::OnReadData(const dram::CommandMsg& msg,
                                   dram::ReadBurst& burst,
                                   const dram::BusContext& ctx) {
  for (Armed& a : armed_) {
    if (a.done || !a.fired ||
        a.trigger.action.kind != ActionKind::kReplayBusTuple) {
      continue;
    }
    if (!a.target) a.target = msg.addr;
    if (msg.addr != *a.target) continue;
    if (!a.recorded) {
      a.recorded = burst;
      continue;
    }
    const std::string before = Describe(burst.data, burst.ecc_lane);
    burst = *a.recorded;
    ledger_.MarkInjected(a.id, ctx.now, before,
                         Describe(burst.data, burst.ecc_lane));
    a.done = true;
  }
}

void ScriptedAdversary::ApplyModuleAction(Armed& a, dram::Cycle now) {
  const AttackAction& act = a.trigger.action;
  switch (act.kind) {
    case ActionKind::kFlipStoredBits: {
      const dram::PhysicalAddress addr =
          dram::DecodeAddress(*act.address, geometry_);
      std::vector<unsigned> bits = act.bits;
      if (bits.empty()) {
        const unsigned k = 1 + static_cast<unsigned>(
                                   stats::BoundedDraw(rng_, kMaxFlips));
        while (bits.size() < k) {
          const auto b =
              static_cast<unsigned>(stats::BoundedDraw(rng_, kStoredLineBits));
          if (std::find(bits.begin(), bits.end(), b) == bits.end()) {
            bits.push_back(b);
          }
        }
      }
      dram::SecureLine& line = module_.storage().Mutable(addr);
      const std::string before = Describe(line.data, line.ecc_meta);
      for (unsigned b : bits) {
        if (b < 512) {
          line.data[b / 8] ^= static_cast<std::uint8_t>(1u << (b % 8));
        } else {
          line.ecc_meta ^= std::uint64_t{1} << (b - 512);
        }
      }
      ledger_.MarkInjected(a.id, now, before,
                           Describe(line.data, line.ecc_meta));
      a.done = true;
      break;
    }
    case ActionKind::kSnapshotModule:
      snapshot_ = module_.Snapshot();
      ledger_.MarkInjected(a.id, now, "",
                           "module image of " +
                               std::to_string(snapshot_->storage.lines.size()) +
                               " written lines");
      a.done = true;
      break;
    case ActionKind::kRestoreModule: {
      a.done = true;
      if (!snapshot_) break;  // nothing to restore; never injected
      chip::ModuleImage image = *snapshot_;
      // Row buffers follow the live bus, not the frozen copy.
      image.open_rows = module_.open_rows();
      module_.Restore(image);
      ledger_.MarkInjected(a.id, now, "live module", "earlier module image");
      break;
    }
    case ActionKind::kSubstituteModuleAcrossWake:
      frozen_ = module_.Snapshot();
      pending_substitution_ =
          static_cast<std::size_t>(&a - armed_.data());
      break;
    default:
      break;
  }
}

void ScriptedAdversary::OnWake(dram::Cycle now) {
  if (!pending_substitution_) return;
  Armed& a = armed_.at(*pending_substitution_);
  pending_substitution_.reset();
  chip::ModuleImage image = std::move(*frozen_);
  frozen_.reset();
  image.open_rows = module_.open_rows();
  module_.Restore(image);
  ledger_.MarkInjected(a.id, now, "module at wake", "module frozen earlier");
  a.done = true;
}

}  // namespace secddr::adversary
