// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_PARSER_HPP
#define AVS_PARSER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avs/phv.hpp"
#include "avs/table_op.hpp"

namespace avs {

// One transition of a parse table: matches the just-extracted field value
// (nullopt = wildcard, lowest priority) and names the next node.
struct ParseTableEntry {
  std::optional<BitBuffer> value;
  std::string next;

  bool is_wildcard() const { return !value.has_value(); }
};

struct ParseNode {
  std::string id;
  bool accept = false;          // terminal; extracts nothing
  std::string field;            // header field extracted by this node
  std::vector<ParseTableEntry> table;
};

struct ParseGraph {
  std::map<std::string, ParseNode> nodes;
  std::string start;
  std::uint64_t max_depth = 64;

  bool empty() const { return nodes.empty(); }
};

enum class ParseStatus { ok, underflow, no_transition, depth_exceeded, bad_varlen };

struct ParseResult {
  ParseStatus status = ParseStatus::ok;
  // Drop counter name for non-ok statuses.
  const char* drop_reason() const;
};

// Walks the graph over phv.data_buffer from bit 0: each non-terminal node
// extracts its field at the cursor, marks it valid, and picks the next node
// from the parse table (specific values first, then the wildcard). On ACCEPT
// the cursor becomes payload_offset. Pre-existing fields not on the taken
// path are left untouched. Errors report which drop counter to bump; the
// caller owns the drop.
ParseResult run_parser(Phv& phv, const ParseGraph& graph, const HeaderDefinition& hdr);

// Static checks against the header definition: unknown fields, entry width
// mismatches, duplicate table values, multiple wildcards, missing/duplicate
// ACCEPT, ACCEPT unreachable from some node, dangling next pointers, and
// declared start_bit inconsistencies along parse paths (OverlappingFields).
std::vector<Diagnostic> validate_graph(const ParseGraph& graph, const HeaderDefinition& hdr);

// Runtime parse-table mutation, applied between packets.
void cp_update_parse_table(ParseGraph& graph, const std::string& node_id,
                           const ParseTableEntry& entry, TableOp op,
                           const HeaderDefinition& hdr);

}  // namespace avs

#endif  // AVS_PARSER_HPP
