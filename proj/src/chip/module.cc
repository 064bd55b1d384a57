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

#include "secddr/chip/module.h"

#include <stdexcept>

namespace secddr::chip {

DimmModule::DimmModule(const dram::Geometry& geometry,
                       std::vector<std::unique_ptr<RankLogic>> ranks)
    : geometry_(geometry),
      storage_(geometry),
      ranks_(std::move(ranks)),
      open_rows_(std::size_t{geometry.ranks} * geometry.banks_per_rank()) {
  if (ranks_.size() != geometry.ranks) {
    throw std::invalid_argument("DimmModule: one RankLogic per rank required");
  }
}

std::size_t DimmModule::BankSlot(const dram::PhysicalAddress& a) const {
  return (std::size_t{a.rank} * geometry_.bank_groups + a.bank_group) *
             geometry_.banks_per_group +
         a.bank;
}

void DimmModule::OnCommand(const dram::CommandMsg& msg) {
  switch (msg.cmd) {
    case dram::Command::kActivate:
      open_rows_.at(BankSlot(msg.addr)) = msg.addr.row;
      break;
    case dram::Command::kPrecharge:
      open_rows_.at(BankSlot(msg.addr)).reset();
      break;
    default:
      break;
  }
}

std::optional<dram::PhysicalAddress> DimmModule::Resolve(
    const dram::CommandMsg& msg) const {
  const auto& row = open_rows_.at(BankSlot(msg.addr));
  if (!row) return std::nullopt;
  dram::PhysicalAddress a = msg.addr;
  a.row = *row;
  return a;
}

WriteOutcome DimmModule::Write(const dram::CommandMsg& msg,
                               const dram::WriteBurst& burst) {
  const auto addr = Resolve(msg);
  if (!addr) return WriteOutcome::kIgnored;
  return ranks_.at(addr->rank)->HandleWrite(*addr, burst, storage_);
}

std::optional<dram::ReadBurst> DimmModule::Read(const dram::CommandMsg& msg) {
  const auto addr = Resolve(msg);
  if (!addr) return std::nullopt;
  return ranks_.at(addr->rank)->HandleRead(*addr, storage_);
}

KeyedRank* DimmModule::keyed_rank(std::uint32_t r) {
  return dynamic_cast<KeyedRank*>(ranks_.at(r).get());
}

ModuleImage DimmModule::Snapshot() const {
  ModuleImage image{storage_.Snapshot(), {}, open_rows_};
  for (const auto& r : ranks_) image.ranks.push_back(r->SaveState());
  return image;
}

void DimmModule::Restore(const ModuleImage& image, bool include_rank_state) {
  storage_.Restore(image.storage);
  open_rows_ = image.open_rows;
  if (!include_rank_state) return;
  for (std::size_t i = 0; i < ranks_.size() && i < image.ranks.size(); ++i) {
    if (image.ranks[i]) ranks_[i]->RestoreState(*image.ranks[i]);
  }
}

void DimmModule::ReplaceRank(std::uint32_t r,
                             std::unique_ptr<RankLogic> logic) {
  ranks_.at(r) = std::move(logic);
}

void DimmModule::PowerDown() {
  for (auto& r : ranks_) r->PowerDown();
  for (auto& row : open_rows_) row.reset();
}

}  // namespace secddr::chip
