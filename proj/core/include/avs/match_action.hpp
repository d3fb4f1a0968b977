// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_MATCH_ACTION_HPP
#define AVS_MATCH_ACTION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avs/action.hpp"
#include "avs/phv.hpp"
#include "avs/stateful.hpp"
#include "avs/table_op.hpp"

namespace avs {

enum class MatchKind { exact, lpm, ternary, range };

const char* match_kind_name(MatchKind kind);
MatchKind match_kind_from_name(const std::string& name);

// One table entry. The populated key parts depend on the kind:
//   exact   — key
//   lpm     — key + prefix_len
//   ternary — key + mask (+ priority)
//   range   — lo + hi (+ priority)
struct MatEntry {
  MatchKind kind = MatchKind::exact;
  BitBuffer key;
  std::size_t prefix_len = 0;
  BitBuffer mask;
  BitBuffer lo, hi;
  int priority = 0;
  std::vector<ActionCall> actions;
  std::uint64_t insert_seq = 0;  // tiebreak: first added wins

  // True when both entries address the same match (used by modify/delete).
  bool same_key(const MatEntry& other) const;
  std::string key_to_string() const;
};

// One node of the match-action graph: a field paired with its table.
// All entries of a node share one match kind.
struct MatNode {
  std::string id;
  std::string field;
  std::vector<MatEntry> entries;
  std::vector<ActionCall> default_actions;  // executed on miss
  std::optional<std::string> on_hit;        // nullopt = terminal
  std::optional<std::string> on_miss;
};

struct MatGraph {
  std::map<std::string, MatNode> nodes;
  std::string start;  // empty = identity graph

  bool empty() const { return start.empty(); }
};

// Best-match selection per the node's match kind:
//   exact   — unique key equality
//   lpm     — longest matching prefix
//   ternary — highest priority among (value & mask) == (key & mask)
//   range   — highest priority among lo <= value <= hi
// Priority ties go to the earliest-inserted entry. Returns nullptr on miss.
const MatEntry* lookup(const std::vector<MatEntry>& entries, const BitBuffer& value);

enum class MauStatus { ok, dropped, invalid_field };

struct MauResult {
  MauStatus status = MauStatus::ok;
  const char* drop_reason() const;
};

enum class Stage { ingress, egress };

// Runs the match-action graph: per node, look up the field value, execute
// the chosen entry's (or the default) actions in order, then follow the
// hit/miss edge. A drop action halts the walk. State mutations land in
// execution order.
MauResult run_mau(Phv& phv, const MatGraph& graph, StatefulStore& store,
                  const HeaderDefinition& hdr, Stage stage, std::uint64_t now_ns);

// Structural checks: dangling edges, unknown fields, malformed keys/widths,
// duplicate keys, mixed match kinds within a node, cycles, and egress-stage
// set_egress_port usage.
std::vector<Diagnostic> validate_mat_graph(const MatGraph& graph, const HeaderDefinition& hdr,
                                           const StatefulStore& store, Stage stage);

// Runtime entry mutation, applied between packets. Rejects entries that are
// malformed for the node, duplicate keys, and egress-port writes when the
// graph belongs to the egress stage.
void cp_mat_op(MatGraph& graph, const std::string& node_id, MatEntry entry, TableOp op,
               const HeaderDefinition& hdr, const StatefulStore& store, Stage stage);

}  // namespace avs

#endif  // AVS_MATCH_ACTION_HPP
