// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_TRACE_HPP
#define AVS_TRACE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "avs/phv.hpp"

namespace avs {

// One packet of a replay trace. Text form, one per line:
//   <time_ns> <port> <hex-bytes>
// Lines starting with '#' and blank lines are ignored.
struct TraceRecord {
  Timestamp time_ns = 0;
  PortId port = 0;
  std::vector<std::uint8_t> bytes;
};

std::vector<TraceRecord> read_trace(const std::filesystem::path& path);
std::vector<TraceRecord> parse_trace(const std::string& text);

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& records);
std::string format_trace(const std::vector<TraceRecord>& records);

}  // namespace avs

#endif  // AVS_TRACE_HPP
