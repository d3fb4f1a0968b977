// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/deparser.hpp"

namespace avs {

DeparseResult run_deparser(Phv& phv, const DeparseGraph& graph) {
  BitBuffer out;
  for (const DeparseNode& node : graph.nodes) {
    if (node.is_constant()) {
      out.append(node.constant);
      continue;
    }
    if (!phv.header_valid(*node.field)) {
      if (node.emit_if_valid) continue;
      return {DeparseStatus::invalid_field};
    }
    out.append(phv.header(*node.field));
  }
  std::uint64_t header_bits = out.bit_length();
  std::uint64_t offset = phv.has_meta(meta::payload_offset) ? phv.meta(meta::payload_offset) : 0;
  offset = std::min<std::uint64_t>(offset, phv.data_buffer.bit_length());
  out.append(phv.data_buffer.slice(offset, phv.data_buffer.bit_length() - offset));
  phv.data_buffer = std::move(out);
  phv.set_meta(meta::payload_offset, header_bits);
  return {DeparseStatus::ok};
}

std::vector<Diagnostic> validate_deparse_graph(const DeparseGraph& graph,
                                               const HeaderDefinition& hdr) {
  std::vector<Diagnostic> diags;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const DeparseNode& node = graph.nodes[i];
    if (node.is_constant()) {
      if (node.constant.bit_length() == 0)
        diags.push_back({"ZeroLengthField", "deparse[" + std::to_string(i) + "]",
                         "constant node emits no bits"});
      continue;
    }
    if (!hdr.has_header_field(*node.field))
      diags.push_back({"UnknownField", "deparse[" + std::to_string(i) + "]",
                       "node emits undeclared field \"" + *node.field + "\""});
  }
  return diags;
}

}  // namespace avs
