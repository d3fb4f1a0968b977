// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/parser.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace avs {

const char* ParseResult::drop_reason() const {
  switch (status) {
    case ParseStatus::ok: return "";
    case ParseStatus::underflow: return "parse_underflow";
    case ParseStatus::no_transition: return "parse_no_transition";
    case ParseStatus::depth_exceeded: return "parse_depth_exceeded";
    case ParseStatus::bad_varlen: return "parse_bad_varlen";
  }
  return "";
}

namespace {

// Resolved extraction length for a field at parse time.
std::optional<std::uint64_t> field_length(const Phv& phv, const HeaderFieldDef& def) {
  if (!def.is_variable()) return *def.length_bits;
  if (!phv.header_valid(def.length_from)) return std::nullopt;
  const BitBuffer& v = phv.header(def.length_from);
  if (v.bit_length() > 64) return std::nullopt;
  return v.as_uint();
}

const ParseTableEntry* select_transition(const std::vector<ParseTableEntry>& table,
                                         const BitBuffer& value) {
  const ParseTableEntry* wildcard = nullptr;
  for (const auto& e : table) {
    if (e.is_wildcard()) {
      wildcard = &e;
      continue;
    }
    if (BitBuffer::compare_numeric(*e.value, value) == std::strong_ordering::equal) return &e;
  }
  return wildcard;
}

}  // namespace

ParseResult run_parser(Phv& phv, const ParseGraph& graph, const HeaderDefinition& hdr) {
  std::uint64_t cursor = 0;
  std::uint64_t depth = 0;
  const std::string* node_id = &graph.start;
  while (true) {
    auto it = graph.nodes.find(*node_id);
    if (it == graph.nodes.end())
      throw AvsError(ErrorCode::no_such_node, "parse node \"" + *node_id + "\"");
    const ParseNode& node = it->second;
    if (node.accept) {
      phv.set_meta(meta::payload_offset, cursor);
      return {ParseStatus::ok};
    }
    if (++depth > graph.max_depth) return {ParseStatus::depth_exceeded};

    const HeaderFieldDef& def = hdr.header_field(node.field);
    auto len = field_length(phv, def);
    if (!len || *len == 0) return {ParseStatus::bad_varlen};
    if (cursor + *len > phv.data_buffer.bit_length()) return {ParseStatus::underflow};

    BitBuffer value = phv.data_buffer.slice(cursor, *len);
    cursor += *len;
    const ParseTableEntry* next = select_transition(node.table, value);
    phv.set_header(node.field, std::move(value));
    if (next == nullptr) return {ParseStatus::no_transition};
    node_id = &next->next;
  }
}

std::vector<Diagnostic> validate_graph(const ParseGraph& graph, const HeaderDefinition& hdr) {
  std::vector<Diagnostic> diags;
  if (graph.nodes.count(graph.start) == 0) {
    diags.push_back({"UnknownNode", "parse.start", "start node \"" + graph.start + "\" missing"});
    return diags;
  }

  std::vector<std::string> accepts;
  for (const auto& [id, node] : graph.nodes) {
    if (node.accept) {
      accepts.push_back(id);
      continue;
    }
    if (!hdr.has_header_field(node.field)) {
      diags.push_back({"UnknownField", "parse." + id,
                       "node extracts undeclared field \"" + node.field + "\""});
      continue;
    }
    const HeaderFieldDef& def = hdr.header_field(node.field);
    int wildcards = 0;
    std::vector<const BitBuffer*> values;
    for (const auto& e : node.table) {
      if (e.is_wildcard()) {
        ++wildcards;
      } else {
        if (!def.is_variable() && e.value->bit_length() != *def.length_bits)
          diags.push_back({"WidthMismatch", "parse." + id,
                           "table value width " + std::to_string(e.value->bit_length()) +
                               " != field width " + std::to_string(*def.length_bits)});
        for (const BitBuffer* prev : values)
          if (*prev == *e.value)
            diags.push_back({"DuplicateEntry", "parse." + id, "duplicate table value"});
        values.push_back(&*e.value);
      }
      if (graph.nodes.count(e.next) == 0)
        diags.push_back({"UnknownNode", "parse." + id,
                         "transition to undeclared node \"" + e.next + "\""});
    }
    if (wildcards > 1)
      diags.push_back({"DuplicateEntry", "parse." + id, "more than one wildcard entry"});
  }

  if (accepts.empty()) {
    diags.push_back({"UnreachableAccept", "parse", "graph has no ACCEPT node"});
    return diags;
  }
  if (accepts.size() > 1)
    diags.push_back({"MultipleAccept", "parse", "graph has more than one ACCEPT node"});

  // ACCEPT must be reachable from every node: reverse reachability from
  // the accept node(s).
  std::set<std::string> reaches(accepts.begin(), accepts.end());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [id, node] : graph.nodes) {
      if (reaches.count(id)) continue;
      for (const auto& e : node.table) {
        if (reaches.count(e.next)) {
          reaches.insert(id);
          grew = true;
          break;
        }
      }
    }
  }
  for (const auto& [id, node] : graph.nodes)
    if (!reaches.count(id))
      diags.push_back({"UnreachableAccept", "parse." + id, "no path from node to ACCEPT"});

  // Walk paths from the start with a cumulative cursor and flag fixed fields
  // whose declared start_bit disagrees with any offset they are parsed at.
  // Offsets become unknown past a variable-length field.
  std::set<std::pair<std::string, std::int64_t>> visited;  // -1 = unknown offset
  std::deque<std::pair<std::string, std::int64_t>> work;
  work.push_back({graph.start, 0});
  while (!work.empty()) {
    auto [id, offset] = work.front();
    work.pop_front();
    if (!visited.insert({id, offset}).second) continue;
    auto it = graph.nodes.find(id);
    if (it == graph.nodes.end() || it->second.accept) continue;
    const ParseNode& node = it->second;
    if (!hdr.has_header_field(node.field)) continue;
    const HeaderFieldDef& def = hdr.header_field(node.field);
    std::int64_t next_offset = -1;
    if (def.is_variable()) {
      next_offset = -1;
    } else {
      if (offset >= 0 && def.start_bit != static_cast<std::uint64_t>(offset))
        diags.push_back({"OverlappingFields", "parse." + id,
                         "field \"" + def.id + "\" declared at bit " +
                             std::to_string(def.start_bit) + " but parsed at bit " +
                             std::to_string(offset)});
      next_offset = offset < 0 ? -1 : offset + static_cast<std::int64_t>(*def.length_bits);
    }
    for (const auto& e : node.table)
      if (graph.nodes.count(e.next)) work.push_back({e.next, next_offset});
  }

  return diags;
}

void cp_update_parse_table(ParseGraph& graph, const std::string& node_id,
                           const ParseTableEntry& entry, TableOp op,
                           const HeaderDefinition& hdr) {
  auto it = graph.nodes.find(node_id);
  if (it == graph.nodes.end())
    throw AvsError(ErrorCode::no_such_node, "parse node \"" + node_id + "\"");
  ParseNode& node = it->second;
  if (node.accept)
    throw AvsError(ErrorCode::malformed_entry, "ACCEPT node has no parse table");

  if (!entry.is_wildcard() && hdr.has_header_field(node.field)) {
    const HeaderFieldDef& def = hdr.header_field(node.field);
    if (!def.is_variable() && entry.value->bit_length() != *def.length_bits)
      throw AvsError(ErrorCode::width_mismatch,
                     "entry width " + std::to_string(entry.value->bit_length()) +
                         " != field width " + std::to_string(*def.length_bits));
  }

  auto matches = [&](const ParseTableEntry& e) {
    if (entry.is_wildcard()) return e.is_wildcard();
    return !e.is_wildcard() && *e.value == *entry.value;
  };
  auto pos = std::find_if(node.table.begin(), node.table.end(), matches);

  switch (op) {
    case TableOp::add:
      if (pos != node.table.end())
        throw AvsError(ErrorCode::duplicate_entry,
                       entry.is_wildcard() ? "wildcard entry already present"
                                           : "table value already present");
      node.table.push_back(entry);
      break;
    case TableOp::modify:
      if (pos == node.table.end())
        throw AvsError(ErrorCode::no_such_entry, "no matching parse table entry");
      pos->next = entry.next;
      break;
    case TableOp::del:
      if (pos == node.table.end())
        throw AvsError(ErrorCode::no_such_entry, "no matching parse table entry");
      node.table.erase(pos);
      break;
  }
}

}  // namespace avs
