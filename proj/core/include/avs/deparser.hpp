// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_DEPARSER_HPP
#define AVS_DEPARSER_HPP

#include <optional>
#include <string>
#include <vector>

#include "avs/phv.hpp"

namespace avs {

// One emission step: a header field (skipped when invalid, unless
// emit_if_valid is turned off) or a constant bit string.
struct DeparseNode {
  std::optional<std::string> field;  // nullopt = constant
  BitBuffer constant;
  bool emit_if_valid = true;  // false: an invalid field is an error, not a skip

  bool is_constant() const { return !field.has_value(); }
};

// The emission order is total, so the graph is kept as a linear node list.
struct DeparseGraph {
  std::vector<DeparseNode> nodes;
};

enum class DeparseStatus { ok, invalid_field };

struct DeparseResult {
  DeparseStatus status = DeparseStatus::ok;
  const char* drop_reason() const {
    return status == DeparseStatus::ok ? "" : "deparse_invalid_field";
  }
};

// Rebuilds phv.data_buffer: emitted nodes in list order, then the original
// payload (the bits at and past payload_offset). Fields may appear more than
// once; invalid fields contribute zero bits. payload_offset is updated to
// the emitted header length.
DeparseResult run_deparser(Phv& phv, const DeparseGraph& graph);

std::vector<Diagnostic> validate_deparse_graph(const DeparseGraph& graph,
                                               const HeaderDefinition& hdr);

}  // namespace avs

#endif  // AVS_DEPARSER_HPP
