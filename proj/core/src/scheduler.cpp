// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/scheduler.hpp"

#include <algorithm>
#include <set>

namespace avs {

namespace {

constexpr std::uint64_t kWfqScale = 1 << 16;

std::optional<std::uint64_t> read_order_field(const Phv& phv, const std::string& field) {
  if (phv.header_valid(field)) {
    const BitBuffer& v = phv.header(field);
    if (v.bit_length() > 64) return std::nullopt;
    return v.as_uint();
  }
  if (phv.has_meta(field)) return phv.meta(field);
  return std::nullopt;
}

class FifoAlgorithm : public SchedulerAlgorithm {
 public:
  std::string name() const override { return "fifo"; }
  std::optional<std::string> assign_order(Phv& phv, WfqState&, const SchedParams&) override {
    phv.set_meta(meta::scheduling_order, phv.seq);
    return std::nullopt;
  }
};

class StrictPriorityAlgorithm : public SchedulerAlgorithm {
 public:
  std::string name() const override { return "strict_priority"; }
  PhvOrderKey order_key() const override {
    return PhvOrderKey{{{meta::scheduling_order, true}}};  // highest priority first
  }
  std::optional<std::string> assign_order(Phv& phv, WfqState&,
                                          const SchedParams& params) override {
    if (!params.priority_field.empty()) {
      auto v = read_order_field(phv, params.priority_field);
      if (!v) return "sched_invalid_field";
      phv.set_meta(meta::scheduling_order, *v);
    } else if (!phv.has_meta(meta::scheduling_order)) {
      phv.set_meta(meta::scheduling_order, 0);
    }
    return std::nullopt;
  }
  bool evict_for(const Phv& arrival, const Phv& lowest, const SchedParams&) override {
    // The arrival outranks the worst resident iff it sorts strictly earlier.
    return compare(arrival, lowest, order_key()) == std::strong_ordering::less;
  }
};

// Packet-GPS approximation with per-flow virtual finish times and a
// self-clocked system virtual time (advanced to the finish tag of each
// departed packet; reset when the port drains empty).
class WfqAlgorithm : public SchedulerAlgorithm {
 public:
  std::string name() const override { return "wfq"; }
  std::optional<std::string> assign_order(Phv& phv, WfqState& wfq,
                                          const SchedParams& params) override {
    std::uint64_t flow = 0;
    if (!params.flow_field.empty()) {
      auto v = read_order_field(phv, params.flow_field);
      if (!v) return "sched_invalid_field";
      flow = *v;
    }
    auto wit = params.wfq_weights.find(flow);
    std::uint64_t weight = wit == params.wfq_weights.end() ? params.wfq_default_weight
                                                           : wit->second;
    if (weight == 0) weight = 1;
    std::uint64_t length_bits = phv.data_buffer.bit_length();
    std::uint64_t start = std::max(wfq.virtual_time, wfq.flow_finish[flow]);
    std::uint64_t finish = start + length_bits * kWfqScale / weight;
    wfq.flow_finish[flow] = finish;
    phv.set_meta(meta::scheduling_order, finish);
    return std::nullopt;
  }
  void on_remove(const Phv& popped, WfqState& wfq, bool now_empty) override {
    if (now_empty) {
      wfq.virtual_time = 0;
      wfq.flow_finish.clear();
      return;
    }
    wfq.virtual_time = std::max(wfq.virtual_time, popped.meta(meta::scheduling_order));
  }
};

std::map<std::string, Scheduler::AlgorithmFactory>& algorithm_registry() {
  static std::map<std::string, Scheduler::AlgorithmFactory> registry;
  if (registry.empty()) {
    registry["fifo"] = [] { return std::make_unique<FifoAlgorithm>(); };
    registry["strict_priority"] = [] { return std::make_unique<StrictPriorityAlgorithm>(); };
    registry["wfq"] = [] { return std::make_unique<WfqAlgorithm>(); };
  }
  return registry;
}

std::uint64_t parse_u64(const std::string& text) {
  try {
    std::size_t pos = 0;
    std::uint64_t v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw AvsError(ErrorCode::invalid_value, "bad numeric value \"" + text + "\"");
  }
}

struct OrderCmp {
  PhvOrderKey key;
  bool operator()(const Phv& a, const Phv& b) const {
    return compare(a, b, key) == std::strong_ordering::less;
  }
};

}  // namespace

struct Scheduler::PortState {
  explicit PortState(PhvOrderKey key) : sds(OrderCmp{std::move(key)}) {}
  std::set<Phv, OrderCmp> sds;
  Timestamp next_free = 0;
  WfqState wfq;
};

void Scheduler::register_algorithm(const std::string& name, AlgorithmFactory factory) {
  algorithm_registry()[name] = std::move(factory);
}

bool Scheduler::has_algorithm(const std::string& name) {
  return algorithm_registry().count(name) != 0;
}

std::vector<std::string> Scheduler::algorithm_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : algorithm_registry()) names.push_back(name);
  return names;
}

Scheduler::Scheduler(SchedParams params) : params_(std::move(params)) {
  auto it = algorithm_registry().find(params_.algorithm);
  if (it == algorithm_registry().end())
    throw AvsError(ErrorCode::invalid_value,
                   "unknown scheduling algorithm \"" + params_.algorithm + "\"");
  algorithm_ = it->second();
}

Scheduler::~Scheduler() = default;

Scheduler::PortState& Scheduler::port_state(PortId port) {
  auto it = ports_.find(port);
  if (it == ports_.end())
    it = ports_.emplace(port, std::make_unique<PortState>(algorithm_->order_key())).first;
  return *it->second;
}

InsertOutcome Scheduler::insert(Phv&& phv) {
  if (!phv.has_meta(meta::egress_port))
    throw AvsError(ErrorCode::no_egress_port, "PHV reached the scheduler without an egress port");
  PortState& st = port_state(phv.meta(meta::egress_port));

  if (auto reason = algorithm_->assign_order(phv, st.wfq, params_))
    return InsertDroppedSelf{*reason};

  if (st.sds.size() >= params_.capacity) {
    auto lowest = std::prev(st.sds.end());
    if (algorithm_->evict_for(phv, *lowest, params_)) {
      Phv evicted = std::move(st.sds.extract(lowest).value());
      st.sds.insert(std::move(phv));
      return InsertEvicted{std::move(evicted)};
    }
    return InsertDroppedSelf{"sds_full"};
  }
  st.sds.insert(std::move(phv));
  return InsertAccepted{};
}

std::optional<RemoveResult> Scheduler::remove(PortId port, Timestamp now) {
  auto it = ports_.find(port);
  if (it == ports_.end() || it->second->sds.empty()) return std::nullopt;
  PortState& st = *it->second;

  Phv phv = std::move(st.sds.extract(st.sds.begin()).value());
  Timestamp depart = std::max(now, st.next_free);
  std::uint64_t rate = params_.rate_for(port);
  if (rate > 0) {
    unsigned __int128 dur =
        static_cast<unsigned __int128>(phv.data_buffer.bit_length()) * 1000000000u / rate;
    st.next_free = depart + static_cast<Timestamp>(dur);
  }
  algorithm_->on_remove(phv, st.wfq, st.sds.empty());
  return RemoveResult{std::move(phv), depart};
}

bool Scheduler::empty(PortId port) const {
  auto it = ports_.find(port);
  return it == ports_.end() || it->second->sds.empty();
}

bool Scheduler::all_empty() const {
  for (const auto& [_, st] : ports_)
    if (!st->sds.empty()) return false;
  return true;
}

std::uint64_t Scheduler::occupancy(PortId port) const {
  auto it = ports_.find(port);
  return it == ports_.end() ? 0 : it->second->sds.size();
}

std::uint64_t Scheduler::total_occupancy() const {
  std::uint64_t n = 0;
  for (const auto& [_, st] : ports_) n += st->sds.size();
  return n;
}

Timestamp Scheduler::next_free(PortId port) const {
  auto it = ports_.find(port);
  return it == ports_.end() ? 0 : it->second->next_free;
}

std::vector<PortId> Scheduler::backlogged_ports() const {
  std::vector<PortId> out;
  for (const auto& [port, st] : ports_)
    if (!st->sds.empty()) out.push_back(port);
  return out;
}

SdsSnapshot Scheduler::inspect() const {
  SdsSnapshot snap;
  for (const auto& [port, st] : ports_) {
    SdsPortSnapshot s;
    s.occupancy = st->sds.size();
    if (!st->sds.empty()) s.head_order = st->sds.begin()->meta(meta::scheduling_order);
    snap[port] = s;
  }
  return snap;
}

void Scheduler::cp_set(const std::string& key, const std::vector<std::string>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw AvsError(ErrorCode::invalid_value,
                     "sched set " + key + " expects " + std::to_string(n) + " argument(s)");
  };
  if (key == "capacity") {
    need(1);
    std::uint64_t v = parse_u64(args[0]);
    if (v == 0) throw AvsError(ErrorCode::invalid_value, "capacity must be positive");
    params_.capacity = v;
  } else if (key == "rate") {
    need(2);
    params_.rate_bps[parse_u64(args[0])] = parse_u64(args[1]);
  } else if (key == "default_rate") {
    need(1);
    params_.default_rate_bps = parse_u64(args[0]);
  } else if (key == "weight") {
    need(2);
    std::uint64_t w = parse_u64(args[1]);
    if (w == 0) throw AvsError(ErrorCode::invalid_value, "wfq weights must be positive");
    params_.wfq_weights[parse_u64(args[0])] = w;
  } else if (key == "wfq_default_weight") {
    need(1);
    std::uint64_t w = parse_u64(args[0]);
    if (w == 0) throw AvsError(ErrorCode::invalid_value, "wfq weights must be positive");
    params_.wfq_default_weight = w;
  } else if (key == "priority_field") {
    need(1);
    params_.priority_field = args[0];
  } else if (key == "flow_field") {
    need(1);
    params_.flow_field = args[0];
  } else {
    throw AvsError(ErrorCode::unknown_param, "sched parameter \"" + key + "\"");
  }
}

}  // namespace avs
