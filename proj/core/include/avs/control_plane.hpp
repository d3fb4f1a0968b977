// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_CONTROL_PLANE_HPP
#define AVS_CONTROL_PLANE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "avs/phv.hpp"

namespace avs {

// One timestamped southbound command. Script lines look like
//   <timestamp_ns> <verb> <args...>
// with verbs: table, bpt, bct, mgt, sched, deparse, read, write, reset.
// Examples:
//   100 bpt set be2 1 tx true
//   0   bct add vlan_tag 0x001525 3 1
//   0   table add ingress mat_proto exact 17 drop
//   50  table add ingress mat_proto ternary 0x40/0xf0 5 set_field(out, 9); counter_inc(c)
//   0   mgt set 7 2,3,5
//   10  sched set weight 0x001525 3
//   0   deparse set ingress eth_dst,eth_src,vlan_tag,proto_type
//   5   read counter ipv4_counter
//   5   write register r 0 7
//   5   write meter m cir 125000
//   5   reset counter ipv4_counter
struct CpCommand {
  Timestamp at = 0;
  std::string verb;
  std::vector<std::string> args;  // whitespace-split args after the verb
  std::string rest;               // raw text after the verb, for action lists
  std::size_t line_no = 0;
};

struct CpParseError {
  std::size_t line_no = 0;
  std::string message;
};

struct CpScript {
  std::vector<CpCommand> commands;
  std::vector<CpParseError> parse_errors;
};

// Lenient line parser: malformed lines become parse_errors (surfaced in run
// stats; the run continues), well-formed lines become commands.
CpScript parse_cp_script(const std::string& text);
CpScript read_cp_script(const std::string& path);

// Device-to-controller notification.
struct Notification {
  Timestamp at = 0;
  std::string kind;   // "buffer_full" | "table_miss_threshold"
  std::string scope;  // emitting buffer set: "be1" | "be2" | "bre"
  int buffer_id = 0;

  std::string to_string() const;
};

}  // namespace avs

#endif  // AVS_CONTROL_PLANE_HPP
