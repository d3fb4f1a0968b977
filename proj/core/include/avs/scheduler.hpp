// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_SCHEDULER_HPP
#define AVS_SCHEDULER_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "avs/phv.hpp"

namespace avs {

// Control-plane-tunable scheduling parameters (S_param).
struct SchedParams {
  std::string algorithm = "fifo";  // fifo | strict_priority | wfq
  std::uint64_t capacity = 1024;   // per-port SDS capacity, in PHVs
  std::map<PortId, std::uint64_t> rate_bps;  // absent/0 = no departure pacing
  std::uint64_t default_rate_bps = 0;

  // strict_priority: field holding the priority; empty = use a
  // scheduling_order precomputed upstream (set_sched_order), default 0.
  std::string priority_field;

  // wfq: flow classification field plus per-flow-value weights.
  std::string flow_field;
  std::map<std::uint64_t, std::uint64_t> wfq_weights;
  std::uint64_t wfq_default_weight = 1;

  std::uint64_t rate_for(PortId port) const {
    auto it = rate_bps.find(port);
    return it == rate_bps.end() ? default_rate_bps : it->second;
  }
};

struct InsertAccepted {};
struct InsertDroppedSelf {
  std::string reason;  // "sds_full" | "sched_invalid_field"
};
struct InsertEvicted {
  Phv evicted;
};
using InsertOutcome = std::variant<InsertAccepted, InsertDroppedSelf, InsertEvicted>;

struct RemoveResult {
  Phv phv;
  Timestamp depart_time;
};

struct SdsPortSnapshot {
  std::uint64_t occupancy = 0;
  std::optional<std::uint64_t> head_order;  // scheduling_order of the next PHV out
};
using SdsSnapshot = std::map<PortId, SdsPortSnapshot>;

class SchedulerAlgorithm;

// The scheduler data structure: one totally ordered PHV multiset per egress
// port (ordered under the active algorithm's order key), plus the departure
// pacing state. Insert and Remove are delegated to the pluggable algorithm.
class Scheduler {
 public:
  explicit Scheduler(SchedParams params);
  Scheduler(Scheduler&&) = default;
  Scheduler& operator=(Scheduler&&) = default;
  ~Scheduler();

  // Computes the PHV's scheduling order, places it, and resolves overflow
  // per the algorithm (drop the arrival, or evict a lower-ranked resident).
  InsertOutcome insert(Phv&& phv);

  // Head of the port's total order, with its departure time:
  // max(now, port_next_free); pacing advances next_free by the packet's
  // transmit duration when a rate is configured.
  std::optional<RemoveResult> remove(PortId port, Timestamp now);

  bool empty(PortId port) const;
  bool all_empty() const;
  std::uint64_t occupancy(PortId port) const;
  std::uint64_t total_occupancy() const;
  Timestamp next_free(PortId port) const;
  // Ports that currently hold at least one PHV.
  std::vector<PortId> backlogged_ports() const;

  SdsSnapshot inspect() const;

  // S_param mutation: capacity, rate <port>, weight <flow-value>,
  // priority_field, flow_field, wfq_default_weight.
  void cp_set(const std::string& key, const std::vector<std::string>& args);

  const SchedParams& params() const { return params_; }

  // The algorithm plugin seam: a factory per algorithm name.
  using AlgorithmFactory = std::function<std::unique_ptr<SchedulerAlgorithm>()>;
  static void register_algorithm(const std::string& name, AlgorithmFactory factory);
  static bool has_algorithm(const std::string& name);
  static std::vector<std::string> algorithm_names();

 private:
  struct PortState;

  PortState& port_state(PortId port);

  SchedParams params_;
  std::unique_ptr<SchedulerAlgorithm> algorithm_;
  std::map<PortId, std::unique_ptr<PortState>> ports_;
};

// Per-port WFQ bookkeeping (virtual clock and per-flow finish tags).
struct WfqState {
  std::uint64_t virtual_time = 0;
  std::map<std::uint64_t, std::uint64_t> flow_finish;
};

// Implementation interface for scheduling algorithms. An algorithm supplies
// the order key, computes scheduling_order at insert, and decides overflow
// and removal bookkeeping.
class SchedulerAlgorithm {
 public:
  virtual ~SchedulerAlgorithm() = default;
  virtual std::string name() const = 0;
  // Ordering over the per-port multiset; heads pop first.
  virtual PhvOrderKey order_key() const {
    return PhvOrderKey{{{meta::scheduling_order, false}}};
  }
  // Stamps phv's scheduling_order. Returns a drop reason on failure.
  virtual std::optional<std::string> assign_order(Phv& phv, WfqState& wfq,
                                                  const SchedParams& params) = 0;
  // Overflow policy when the port's SDS is at capacity. Default: drop the
  // arrival. `lowest` is the currently worst-ranked resident.
  virtual bool evict_for(const Phv& arrival, const Phv& lowest, const SchedParams& params) {
    (void)arrival, (void)lowest, (void)params;
    return false;
  }
  virtual void on_remove(const Phv& popped, WfqState& wfq, bool now_empty) {
    (void)popped, (void)wfq, (void)now_empty;
  }
};

}  // namespace avs

#endif  // AVS_SCHEDULER_HPP
