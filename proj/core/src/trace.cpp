// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/trace.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "avs/errors.hpp"

namespace avs {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint64_t parse_number(const std::string& token, std::size_t line_no, const char* what) {
  if (token.empty())
    throw AvsError(ErrorCode::malformed_line,
                   "line " + std::to_string(line_no) + ": missing " + what);
  std::uint64_t v = 0;
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw AvsError(ErrorCode::malformed_line,
                     "line " + std::to_string(line_no) + ": bad " + what + " \"" + token + "\"");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace

std::vector<TraceRecord> parse_trace(const std::string& text) {
  std::vector<TraceRecord> records;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string time_tok, port_tok, hex_tok, extra;
    if (!(ls >> time_tok)) continue;       // blank line
    if (time_tok[0] == '#') continue;      // comment
    if (!(ls >> port_tok >> hex_tok) || (ls >> extra))
      throw AvsError(ErrorCode::malformed_line,
                     "line " + std::to_string(line_no) +
                         ": expected \"<time_ns> <port> <hex-bytes>\"");
    TraceRecord rec;
    rec.time_ns = parse_number(time_tok, line_no, "timestamp");
    rec.port = parse_number(port_tok, line_no, "port");
    if (hex_tok.size() % 2 != 0)
      throw AvsError(ErrorCode::malformed_line,
                     "line " + std::to_string(line_no) + ": odd-length hex packet");
    rec.bytes.reserve(hex_tok.size() / 2);
    for (std::size_t i = 0; i < hex_tok.size(); i += 2) {
      int hi = hex_digit(hex_tok[i]), lo = hex_digit(hex_tok[i + 1]);
      if (hi < 0 || lo < 0)
        throw AvsError(ErrorCode::malformed_line,
                       "line " + std::to_string(line_no) + ": bad hex digit");
      rec.bytes.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TraceRecord> read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw AvsError(ErrorCode::malformed_line, "cannot open trace file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace(buf.str());
}

std::string format_trace(const std::vector<TraceRecord>& records) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (const TraceRecord& r : records) {
    out += std::to_string(r.time_ns);
    out += ' ';
    out += std::to_string(r.port);
    out += ' ';
    for (std::uint8_t b : r.bytes) {
      out += digits[b >> 4];
      out += digits[b & 0xF];
    }
    out += '\n';
  }
  return out;
}

void write_trace(const std::filesystem::path& path, const std::vector<TraceRecord>& records) {
  std::ofstream out(path);
  if (!out)
    throw AvsError(ErrorCode::malformed_line, "cannot open output file " + path.string());
  out << format_trace(records);
}

}  // namespace avs
