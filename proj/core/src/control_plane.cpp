// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/control_plane.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "avs/errors.hpp"

namespace avs {

namespace {

const std::set<std::string>& known_verbs() {
  static const std::set<std::string> verbs = {"table", "bpt",  "bct",   "mgt", "sched",
                                              "deparse", "read", "write", "reset"};
  return verbs;
}

}  // namespace

CpScript parse_cp_script(const std::string& text) {
  CpScript script;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string ts_tok;
    if (!(ls >> ts_tok)) continue;
    if (ts_tok[0] == '#') continue;

    CpCommand cmd;
    cmd.line_no = line_no;
    bool ts_ok = !ts_tok.empty();
    for (char c : ts_tok)
      if (!std::isdigit(static_cast<unsigned char>(c))) ts_ok = false;
    if (!ts_ok) {
      script.parse_errors.push_back({line_no, "bad timestamp \"" + ts_tok + "\""});
      continue;
    }
    cmd.at = std::stoull(ts_tok);
    if (!(ls >> cmd.verb)) {
      script.parse_errors.push_back({line_no, "missing verb"});
      continue;
    }
    if (!known_verbs().count(cmd.verb)) {
      script.parse_errors.push_back({line_no, "unknown verb \"" + cmd.verb + "\""});
      continue;
    }
    std::string rest;
    std::getline(ls, rest);
    std::size_t b = rest.find_first_not_of(" \t");
    cmd.rest = b == std::string::npos ? "" : rest.substr(b);
    std::istringstream as(cmd.rest);
    std::string tok;
    while (as >> tok) cmd.args.push_back(tok);
    script.commands.push_back(std::move(cmd));
  }
  return script;
}

CpScript read_cp_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AvsError(ErrorCode::malformed_line, "cannot open CP script " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cp_script(buf.str());
}

std::string Notification::to_string() const {
  return "t=" + std::to_string(at) + " " + kind + " " + scope + " buffer=" +
         std::to_string(buffer_id);
}

}  // namespace avs
