// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_BUFFER_ENGINE_HPP
#define AVS_BUFFER_ENGINE_HPP

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "avs/phv.hpp"
#include "avs/table_op.hpp"

namespace avs {

// One BPT row: capacity (in PHVs) plus the receive / transmit gates.
// Shrinking a buffer below its occupancy blocks new inserts but never
// evicts residents.
struct BufferParams {
  std::uint64_t size = 0;
  bool rx = true;
  bool tx = true;
};

// One BCT row: PHVs whose `field` equals `value` go to `buffer_id`; among
// several matches the numerically larger priority wins, ties go to the
// lower buffer id.
struct BctEntry {
  std::string field;
  BitBuffer value;
  int buffer_id = 0;
  int priority = 0;
};

enum class BufferSelect {
  by_bct,          // BE2: field-based admission via the BCT
  by_ingress_map,  // BE1: static ingress-port -> buffer map
  by_egress_port,  // BRE: buffer id == egress port
};

enum class BptField { size, rx, tx };

struct StoredOutcome {
  int buffer_id;
};
struct DroppedOutcome {
  std::string reason;  // "rx_closed" | "buffer_full"
  int buffer_id;
  bool notify = false;  // buffer_full crossing that should reach the CP
};
using ReceiveOutcome = std::variant<StoredOutcome, DroppedOutcome>;

struct BufferStats {
  std::uint64_t inserts = 0;
  std::uint64_t pops = 0;
  std::uint64_t dropped_rx = 0;
  std::uint64_t dropped_full = 0;
};

// A set of FIFO buffers with a shared receiver/sender contract. The receiver
// side is `receive` (admission by BCT, port map, or egress port); the sender
// side is `send` (round-robin over tx-open, non-empty buffers). Used for the
// two ingress buffer engine positions and, per egress port, inside the BRE.
class BufferSet {
 public:
  BufferSet() = default;
  BufferSet(std::string name, BufferSelect select);

  void add_buffer(int id, BufferParams params);
  bool has_buffer(int id) const { return bpt_.count(id) != 0; }
  // Implicit catch-all for unmatched PHVs (rx/tx open, effectively unbounded).
  void ensure_default_buffer();

  void set_ingress_map(std::map<std::uint64_t, int> port_map) { port_map_ = std::move(port_map); }
  void set_bct(std::vector<BctEntry> bct) { bct_ = std::move(bct); }
  const std::vector<BctEntry>& bct() const { return bct_; }

  ReceiveOutcome receive(Phv&& phv);
  // Pops the head of the next eligible buffer in round-robin order, along
  // with the buffer it came from.
  std::optional<std::pair<int, Phv>> send();
  // Like send(), but only pops heads that have dwelt at least cost_ns since
  // entering `stage` (the event loop's per-component cost model).
  std::optional<std::pair<int, Phv>> send_ready(Component stage, Timestamp now,
                                                std::uint64_t cost_ns);

  // True when some pop is currently possible (tx open and non-empty).
  bool has_eligible() const;
  bool all_empty() const;
  std::uint64_t total_occupancy() const;
  std::uint64_t occupancy(int id) const;
  // Earliest metadata arrival among heads of tx-open buffers; used by the
  // event loop for cost-based dwell. Returns nullopt when nothing eligible.
  std::optional<Timestamp> earliest_eligible_entry(Component stage) const;

  void cp_set(int buffer_id, BptField field, std::uint64_t value);
  void cp_update_bct(const BctEntry& entry, TableOp op);

  const std::map<int, BufferParams>& bpt() const { return bpt_; }
  const std::map<int, BufferStats>& stats() const { return stats_; }
  const std::string& name() const { return name_; }

 private:
  int select_buffer(const Phv& phv) const;

  std::string name_;
  BufferSelect select_ = BufferSelect::by_bct;
  std::map<int, BufferParams> bpt_;
  std::map<int, std::deque<Phv>> queues_;
  std::map<int, BufferStats> stats_;
  std::map<int, bool> full_notify_armed_;
  std::vector<BctEntry> bct_;
  std::map<std::uint64_t, int> port_map_;
  std::size_t rr_pos_ = 0;
};

}  // namespace avs

#endif  // AVS_BUFFER_ENGINE_HPP
