// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/buffer_engine.hpp"

#include <algorithm>
#include <limits>

namespace avs {

namespace {
constexpr std::uint64_t kDefaultBufferSize = std::uint64_t{1} << 20;
}

BufferSet::BufferSet(std::string name, BufferSelect select)
    : name_(std::move(name)), select_(select) {}

void BufferSet::add_buffer(int id, BufferParams params) {
  bpt_[id] = params;
  queues_.emplace(id, std::deque<Phv>{});
  stats_.emplace(id, BufferStats{});
  full_notify_armed_.emplace(id, true);
}

void BufferSet::ensure_default_buffer() {
  if (!has_buffer(0)) add_buffer(0, {kDefaultBufferSize, true, true});
}

int BufferSet::select_buffer(const Phv& phv) const {
  switch (select_) {
    case BufferSelect::by_bct: {
      const BctEntry* best = nullptr;
      for (const auto& e : bct_) {
        bool match = false;
        if (phv.header_valid(e.field)) {
          match = BitBuffer::compare_numeric(phv.header(e.field), e.value) ==
                  std::strong_ordering::equal;
        } else if (phv.has_meta(e.field)) {
          match = e.value.bit_length() <= 64 && phv.meta(e.field) == e.value.as_uint();
        }
        if (!match) continue;
        if (best == nullptr || e.priority > best->priority ||
            (e.priority == best->priority && e.buffer_id < best->buffer_id))
          best = &e;
      }
      return best ? best->buffer_id : 0;
    }
    case BufferSelect::by_ingress_map: {
      auto it = port_map_.find(phv.meta(meta::ingress_port));
      return it == port_map_.end() ? 0 : it->second;
    }
    case BufferSelect::by_egress_port:
      return static_cast<int>(phv.meta(meta::egress_port));
  }
  return 0;
}

ReceiveOutcome BufferSet::receive(Phv&& phv) {
  int id = select_buffer(phv);
  auto it = bpt_.find(id);
  if (it == bpt_.end())
    throw AvsError(ErrorCode::no_such_buffer,
                   name_ + " buffer " + std::to_string(id) + " is not declared");
  const BufferParams& params = it->second;
  BufferStats& st = stats_[id];
  if (!params.rx) {
    ++st.dropped_rx;
    return DroppedOutcome{"rx_closed", id, false};
  }
  std::deque<Phv>& q = queues_[id];
  if (q.size() >= params.size) {
    ++st.dropped_full;
    bool notify = full_notify_armed_[id];
    full_notify_armed_[id] = false;
    return DroppedOutcome{"buffer_full", id, notify};
  }
  q.push_back(std::move(phv));
  ++st.inserts;
  return StoredOutcome{id};
}

std::optional<std::pair<int, Phv>> BufferSet::send() {
  return send_ready(Component::be1, std::numeric_limits<Timestamp>::max(), 0);
}

std::optional<std::pair<int, Phv>> BufferSet::send_ready(Component stage, Timestamp now,
                                                         std::uint64_t cost_ns) {
  if (bpt_.empty()) return std::nullopt;
  std::vector<int> ids;
  ids.reserve(bpt_.size());
  for (const auto& [id, _] : bpt_) ids.push_back(id);
  for (std::size_t k = 0; k < ids.size(); ++k) {
    std::size_t idx = (rr_pos_ + k) % ids.size();
    int id = ids[idx];
    const BufferParams& params = bpt_[id];
    std::deque<Phv>& q = queues_[id];
    if (!params.tx || q.empty()) continue;
    if (cost_ns > 0) {
      const auto& entry = q.front().delay.span(stage).entry;
      if (entry && *entry + cost_ns > now) continue;
    }
    Phv phv = std::move(q.front());
    q.pop_front();
    ++stats_[id].pops;
    if (q.size() < params.size) full_notify_armed_[id] = true;
    rr_pos_ = (idx + 1) % ids.size();
    return std::make_pair(id, std::move(phv));
  }
  return std::nullopt;
}

bool BufferSet::has_eligible() const {
  for (const auto& [id, q] : queues_) {
    auto it = bpt_.find(id);
    if (it != bpt_.end() && it->second.tx && !q.empty()) return true;
  }
  return false;
}

bool BufferSet::all_empty() const {
  for (const auto& [_, q] : queues_)
    if (!q.empty()) return false;
  return true;
}

std::uint64_t BufferSet::total_occupancy() const {
  std::uint64_t n = 0;
  for (const auto& [_, q] : queues_) n += q.size();
  return n;
}

std::uint64_t BufferSet::occupancy(int id) const {
  auto it = queues_.find(id);
  return it == queues_.end() ? 0 : it->second.size();
}

std::optional<Timestamp> BufferSet::earliest_eligible_entry(Component stage) const {
  std::optional<Timestamp> best;
  for (const auto& [id, q] : queues_) {
    auto it = bpt_.find(id);
    if (it == bpt_.end() || !it->second.tx || q.empty()) continue;
    const auto& entry = q.front().delay.span(stage).entry;
    Timestamp t = entry ? *entry : 0;
    if (!best || t < *best) best = t;
  }
  return best;
}

void BufferSet::cp_set(int buffer_id, BptField field, std::uint64_t value) {
  auto it = bpt_.find(buffer_id);
  if (it == bpt_.end())
    throw AvsError(ErrorCode::no_such_buffer,
                   name_ + " buffer " + std::to_string(buffer_id) + " is not declared");
  switch (field) {
    case BptField::size:
      if (value == 0) throw AvsError(ErrorCode::invalid_size, "buffer size must be positive");
      it->second.size = value;
      if (queues_[buffer_id].size() < value) full_notify_armed_[buffer_id] = true;
      break;
    case BptField::rx:
      it->second.rx = value != 0;
      break;
    case BptField::tx:
      it->second.tx = value != 0;
      break;
  }
}

void BufferSet::cp_update_bct(const BctEntry& entry, TableOp op) {
  auto pos = std::find_if(bct_.begin(), bct_.end(), [&](const BctEntry& e) {
    return e.field == entry.field && e.value == entry.value;
  });
  switch (op) {
    case TableOp::add:
      if (pos != bct_.end())
        throw AvsError(ErrorCode::duplicate_entry,
                       "BCT entry (" + entry.field + ", 0x" + entry.value.to_hex() +
                           ") already present");
      if (!has_buffer(entry.buffer_id))
        throw AvsError(ErrorCode::no_such_buffer,
                       "BCT references undeclared buffer " + std::to_string(entry.buffer_id));
      bct_.push_back(entry);
      break;
    case TableOp::modify:
      if (pos == bct_.end())
        throw AvsError(ErrorCode::no_such_entry,
                       "no BCT entry (" + entry.field + ", 0x" + entry.value.to_hex() + ")");
      if (!has_buffer(entry.buffer_id))
        throw AvsError(ErrorCode::no_such_buffer,
                       "BCT references undeclared buffer " + std::to_string(entry.buffer_id));
      pos->buffer_id = entry.buffer_id;
      pos->priority = entry.priority;
      break;
    case TableOp::del:
      if (pos == bct_.end())
        throw AvsError(ErrorCode::no_such_entry,
                       "no BCT entry (" + entry.field + ", 0x" + entry.value.to_hex() + ")");
      bct_.erase(pos);
      break;
  }
}

}  // namespace avs
