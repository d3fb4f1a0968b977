// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/match_action.hpp"

#include <algorithm>
#include <set>

namespace avs {

const char* match_kind_name(MatchKind kind) {
  switch (kind) {
    case MatchKind::exact: return "exact";
    case MatchKind::lpm: return "lpm";
    case MatchKind::ternary: return "ternary";
    case MatchKind::range: return "range";
  }
  return "?";
}

MatchKind match_kind_from_name(const std::string& name) {
  if (name == "exact") return MatchKind::exact;
  if (name == "lpm") return MatchKind::lpm;
  if (name == "ternary") return MatchKind::ternary;
  if (name == "range") return MatchKind::range;
  throw AvsError(ErrorCode::malformed_entry, "unknown match kind \"" + name + "\"");
}

bool MatEntry::same_key(const MatEntry& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case MatchKind::exact: return key == other.key;
    case MatchKind::lpm: return prefix_len == other.prefix_len && key == other.key;
    case MatchKind::ternary: return key == other.key && mask == other.mask;
    case MatchKind::range: return lo == other.lo && hi == other.hi;
  }
  return false;
}

std::string MatEntry::key_to_string() const {
  switch (kind) {
    case MatchKind::exact: return "0x" + key.to_hex();
    case MatchKind::lpm: return "0x" + key.to_hex() + "/" + std::to_string(prefix_len);
    case MatchKind::ternary: return "0x" + key.to_hex() + "/&0x" + mask.to_hex();
    case MatchKind::range: return "[0x" + lo.to_hex() + ", 0x" + hi.to_hex() + "]";
  }
  return "?";
}

const char* MauResult::drop_reason() const {
  switch (status) {
    case MauStatus::ok: return "";
    case MauStatus::dropped: return "mat_drop";
    case MauStatus::invalid_field: return "mat_invalid_field";
  }
  return "";
}

namespace {

bool entry_matches(const MatEntry& e, const BitBuffer& value) {
  switch (e.kind) {
    case MatchKind::exact:
      return e.key == value;
    case MatchKind::lpm:
      return value.bit_length() >= e.prefix_len &&
             BitBuffer::prefix_equal(e.key, value, e.prefix_len);
    case MatchKind::ternary: {
      if (e.mask.bit_length() != value.bit_length()) return false;
      return BitBuffer::bit_and(e.key, e.mask) == BitBuffer::bit_and(value, e.mask);
    }
    case MatchKind::range:
      return BitBuffer::compare_numeric(e.lo, value) != std::strong_ordering::greater &&
             BitBuffer::compare_numeric(value, e.hi) != std::strong_ordering::greater;
  }
  return false;
}

}  // namespace

const MatEntry* lookup(const std::vector<MatEntry>& entries, const BitBuffer& value) {
  const MatEntry* best = nullptr;
  for (const auto& e : entries) {
    if (!entry_matches(e, value)) continue;
    if (best == nullptr) {
      best = &e;
      continue;
    }
    switch (e.kind) {
      case MatchKind::exact:
        // Keys are unique; the first hit stands.
        break;
      case MatchKind::lpm:
        if (e.prefix_len > best->prefix_len) best = &e;
        break;
      case MatchKind::ternary:
      case MatchKind::range:
        if (e.priority > best->priority ||
            (e.priority == best->priority && e.insert_seq < best->insert_seq))
          best = &e;
        break;
    }
  }
  return best;
}

MauResult run_mau(Phv& phv, const MatGraph& graph, StatefulStore& store,
                  const HeaderDefinition& hdr, Stage stage, std::uint64_t now_ns) {
  if (graph.empty()) return {MauStatus::ok};
  ActionContext ctx{phv, store, hdr, now_ns, stage == Stage::egress};
  std::size_t steps = 0;
  const std::string* node_id = &graph.start;
  while (node_id != nullptr) {
    auto it = graph.nodes.find(*node_id);
    if (it == graph.nodes.end())
      throw AvsError(ErrorCode::no_such_node, "mat node \"" + *node_id + "\"");
    if (++steps > graph.nodes.size())
      throw AvsError(ErrorCode::malformed_entry, "match-action graph cycle at \"" + *node_id + "\"");
    const MatNode& node = it->second;

    if (!phv.header_valid(node.field) && !phv.has_meta(node.field))
      return {MauStatus::invalid_field};
    BitBuffer value = phv.header_valid(node.field)
                          ? phv.header(node.field)
                          : BitBuffer::from_uint(phv.meta(node.field), 64);

    const MatEntry* hit = lookup(node.entries, value);
    const std::vector<ActionCall>& actions = hit ? hit->actions : node.default_actions;
    for (const ActionCall& a : actions) {
      exec_action(a, ctx);
      if (phv.dropped) return {MauStatus::dropped};
    }
    const auto& edge = hit ? node.on_hit : node.on_miss;
    node_id = edge ? &*edge : nullptr;
  }
  return {MauStatus::ok};
}

namespace {

std::vector<Diagnostic> validate_entry_shape(const MatEntry& e, std::uint64_t field_width,
                                             const std::string& where) {
  std::vector<Diagnostic> diags;
  auto width_check = [&](const BitBuffer& b, const char* part) {
    if (b.bit_length() != field_width)
      diags.push_back({"WidthMismatch", where,
                       std::string(part) + " width " + std::to_string(b.bit_length()) +
                           " != field width " + std::to_string(field_width)});
  };
  switch (e.kind) {
    case MatchKind::exact:
      width_check(e.key, "key");
      break;
    case MatchKind::lpm:
      width_check(e.key, "key");
      if (e.prefix_len > field_width)
        diags.push_back({"MalformedEntry", where, "prefix_len exceeds field width"});
      break;
    case MatchKind::ternary:
      width_check(e.key, "key");
      width_check(e.mask, "mask");
      break;
    case MatchKind::range:
      width_check(e.lo, "lo");
      width_check(e.hi, "hi");
      if (BitBuffer::compare_numeric(e.lo, e.hi) == std::strong_ordering::greater)
        diags.push_back({"MalformedEntry", where, "range lo > hi"});
      break;
  }
  return diags;
}

}  // namespace

std::vector<Diagnostic> validate_mat_graph(const MatGraph& graph, const HeaderDefinition& hdr,
                                           const StatefulStore& store, Stage stage) {
  std::vector<Diagnostic> diags;
  if (graph.empty()) return diags;
  if (graph.nodes.count(graph.start) == 0)
    diags.push_back({"UnknownNode", "mat.start", "start node \"" + graph.start + "\" missing"});

  for (const auto& [id, node] : graph.nodes) {
    const std::string where = "mat." + id;
    bool field_known = hdr.has_header_field(node.field) || hdr.has_metadata_field(node.field);
    if (!field_known)
      diags.push_back({"UnknownField", where,
                       "node matches undeclared field \"" + node.field + "\""});
    std::uint64_t width = 64;
    if (hdr.has_header_field(node.field)) {
      const HeaderFieldDef& def = hdr.header_field(node.field);
      width = def.is_variable() ? 0 : *def.length_bits;
    }

    for (std::size_t i = 0; i < node.entries.size(); ++i) {
      const MatEntry& e = node.entries[i];
      if (e.kind != node.entries.front().kind)
        diags.push_back({"MalformedEntry", where, "mixed match kinds within one node"});
      if (field_known && width > 0) {
        auto shape = validate_entry_shape(e, width, where);
        diags.insert(diags.end(), shape.begin(), shape.end());
      }
      for (std::size_t j = 0; j < i; ++j)
        if (e.same_key(node.entries[j]))
          diags.push_back({"DuplicateExactKey", where,
                           "duplicate key " + e.key_to_string()});
      for (const ActionCall& a : e.actions) {
        auto ad = validate_action(a, hdr, store, stage == Stage::egress, where);
        diags.insert(diags.end(), ad.begin(), ad.end());
      }
    }
    for (const ActionCall& a : node.default_actions) {
      auto ad = validate_action(a, hdr, store, stage == Stage::egress, where + ".default");
      diags.insert(diags.end(), ad.begin(), ad.end());
    }
    for (const auto& edge : {node.on_hit, node.on_miss})
      if (edge && graph.nodes.count(*edge) == 0)
        diags.push_back({"UnknownNode", where, "edge to undeclared node \"" + *edge + "\""});
  }

  // Cycle check over hit/miss edges: iterative DFS coloring.
  std::map<std::string, int> color;  // 0 new, 1 open, 2 done
  for (const auto& [id, _] : graph.nodes) color[id] = 0;
  std::vector<std::pair<std::string, int>> stack;
  for (const auto& [id, _] : graph.nodes) {
    if (color[id] != 0) continue;
    stack.push_back({id, 0});
    while (!stack.empty()) {
      std::string cur = stack.back().first;
      int phase = stack.back().second;
      if (phase == 0) {
        color[cur] = 1;
        stack.back().second = 1;
        auto node_it = graph.nodes.find(cur);
        for (const auto& edge : {node_it->second.on_hit, node_it->second.on_miss}) {
          if (!edge || graph.nodes.count(*edge) == 0) continue;
          if (color[*edge] == 1)
            diags.push_back({"CycleInMatGraph", "mat." + cur,
                             "control-flow cycle through \"" + *edge + "\""});
          else if (color[*edge] == 0)
            stack.push_back({*edge, 0});
        }
      } else {
        color[cur] = 2;
        stack.pop_back();
      }
    }
  }
  return diags;
}

void cp_mat_op(MatGraph& graph, const std::string& node_id, MatEntry entry, TableOp op,
               const HeaderDefinition& hdr, const StatefulStore& store, Stage stage) {
  auto it = graph.nodes.find(node_id);
  if (it == graph.nodes.end())
    throw AvsError(ErrorCode::no_such_node, "mat node \"" + node_id + "\"");
  MatNode& node = it->second;

  if (op != TableOp::del) {
    std::uint64_t width = 64;
    if (hdr.has_header_field(node.field)) {
      const HeaderFieldDef& def = hdr.header_field(node.field);
      width = def.is_variable() ? 0 : *def.length_bits;
    }
    if (width > 0) {
      auto shape = validate_entry_shape(entry, width, node_id);
      if (!shape.empty())
        throw AvsError(ErrorCode::malformed_entry, shape.front().message);
    }
    if (!node.entries.empty() && node.entries.front().kind != entry.kind)
      throw AvsError(ErrorCode::malformed_entry,
                     "entry kind does not match the node's existing entries");
    for (const ActionCall& a : entry.actions) {
      auto ad = validate_action(a, hdr, store, stage == Stage::egress, node_id);
      if (!ad.empty())
        throw AvsError(ad.front().code == "EgressPortWriteInEgressStage"
                           ? ErrorCode::egress_port_write
                           : ErrorCode::malformed_entry,
                       ad.front().message);
    }
  }

  auto pos = std::find_if(node.entries.begin(), node.entries.end(),
                          [&](const MatEntry& e) { return e.same_key(entry); });
  switch (op) {
    case TableOp::add: {
      if (pos != node.entries.end())
        throw AvsError(ErrorCode::duplicate_key, "key " + entry.key_to_string() + " already present");
      std::uint64_t next_seq = 0;
      for (const auto& e : node.entries) next_seq = std::max(next_seq, e.insert_seq + 1);
      entry.insert_seq = next_seq;
      node.entries.push_back(std::move(entry));
      break;
    }
    case TableOp::modify:
      if (pos == node.entries.end())
        throw AvsError(ErrorCode::no_such_entry, "no entry with key " + entry.key_to_string());
      pos->actions = std::move(entry.actions);
      pos->priority = entry.priority;
      break;
    case TableOp::del:
      if (pos == node.entries.end())
        throw AvsError(ErrorCode::no_such_entry, "no entry with key " + entry.key_to_string());
      node.entries.erase(pos);
      break;
  }
}

}  // namespace avs
