// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/errors.hpp"

namespace avs {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::out_of_bounds: return "OutOfBounds";
    case ErrorCode::packet_too_long: return "PacketTooLong";
    case ErrorCode::invalid_field_read: return "InvalidFieldRead";
    case ErrorCode::unknown_field: return "UnknownField";
    case ErrorCode::field_too_wide: return "FieldTooWide";
    case ErrorCode::width_mismatch: return "WidthMismatch";
    case ErrorCode::no_such_node: return "NoSuchNode";
    case ErrorCode::no_such_entry: return "NoSuchEntry";
    case ErrorCode::duplicate_entry: return "DuplicateEntry";
    case ErrorCode::duplicate_key: return "DuplicateExactKey";
    case ErrorCode::malformed_entry: return "MalformedEntry";
    case ErrorCode::no_such_buffer: return "NoSuchBuffer";
    case ErrorCode::invalid_size: return "InvalidSize";
    case ErrorCode::no_such_object: return "NoSuchObject";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::no_such_group: return "NoSuchGroup";
    case ErrorCode::empty_group: return "EmptyGroup";
    case ErrorCode::no_egress_port: return "NoEgressPort";
    case ErrorCode::egress_port_write: return "EgressPortWriteInEgressStage";
    case ErrorCode::unknown_param: return "UnknownParam";
    case ErrorCode::invalid_value: return "InvalidValue";
    case ErrorCode::incomplete_record: return "IncompleteRecord";
    case ErrorCode::validation_failed: return "ValidationFailed";
    case ErrorCode::malformed_line: return "MalformedLine";
    case ErrorCode::invalid_score: return "InvalidScore";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "UnknownError";
}

std::string ValidationError::summarize(const std::vector<Diagnostic>& diags) {
  if (diags.empty()) return "no diagnostics";
  std::string s = std::to_string(diags.size()) + " diagnostic(s); first: ";
  s += diags.front().to_string();
  return s;
}

}  // namespace avs
