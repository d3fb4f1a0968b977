// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_ERRORS_HPP
#define AVS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace avs {

enum class ErrorCode {
  out_of_bounds,
  packet_too_long,
  invalid_field_read,
  unknown_field,
  field_too_wide,
  width_mismatch,
  no_such_node,
  no_such_entry,
  duplicate_entry,
  duplicate_key,
  malformed_entry,
  no_such_buffer,
  invalid_size,
  no_such_object,
  index_out_of_range,
  no_such_group,
  empty_group,
  no_egress_port,
  egress_port_write,
  unknown_param,
  invalid_value,
  incomplete_record,
  validation_failed,
  malformed_line,
  invalid_score,
  parse_error,
};

const char* error_code_name(ErrorCode code);

class AvsError : public std::runtime_error {
 public:
  AvsError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// One finding from a validation pass. Collected, never thrown one at a time.
struct Diagnostic {
  std::string code;     // stable identifier, e.g. "UnresolvedReference"
  std::string where;    // section / node / entry the finding points at
  std::string message;

  std::string to_string() const { return code + " at " + where + ": " + message; }
};

class ValidationError : public AvsError {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics)
      : AvsError(ErrorCode::validation_failed, summarize(diagnostics)),
        diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string summarize(const std::vector<Diagnostic>& diags);

  std::vector<Diagnostic> diagnostics_;
};

}  // namespace avs

#endif  // AVS_ERRORS_HPP
