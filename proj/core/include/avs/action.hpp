// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_ACTION_HPP
#define AVS_ACTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "avs/phv.hpp"
#include "avs/stateful.hpp"

namespace avs {

// Sum/difference expression over field references and unsigned constants,
// e.g. "vlan_tag + 2 - proto_type". Field references resolve against header
// fields first, then metadata.
struct Expr {
  struct Term {
    bool negate = false;
    std::variant<std::uint64_t, std::string> operand;  // constant | field id
  };
  std::vector<Term> terms;

  std::uint64_t eval(const Phv& phv) const;
  // Field ids referenced, for static validation.
  std::vector<std::string> referenced_fields() const;
  std::string to_string() const;
};

enum class ActionOp {
  set_field,
  copy_field,
  add,
  sub,
  band,
  bor,
  bxor,
  shift,
  drop,
  set_egress_port,
  set_mcast_group,
  counter_inc,
  register_read,
  register_write,
  meter_exec,
  set_sched_order,
  no_op,
};

// One action primitive with its arguments. The textual form is
// `name(arg, ...)`; see parse_action.
struct ActionCall {
  ActionOp op = ActionOp::no_op;
  std::string field;    // target field / dst_field
  std::string source;   // copy_field src / state object name
  Expr expr;            // value expression where applicable
  Expr index;           // register/meter index
  std::uint64_t amount = 1;  // counter_inc step / constant port or group id

  std::string to_string() const;
};

// Parses a sum/difference expression ("vlan_tag + 2 - proto_type").
Expr parse_expr(const std::string& text);

// Parses the textual action form. Accepted spellings:
//   no_op / drop
//   set_field(f, <expr>)         copy_field(dst, src)
//   add(f, <expr>) sub and or xor shift (shift is a logical left shift)
//   set_egress_port(3)           set_mcast_group(7)
//   counter_inc(name[, by])      reset via control plane, not an action
//   register_read(dst_field, name, <idx-expr>)
//   register_write(name, <idx-expr>, <expr>)
//   meter_exec(name, <idx-expr>, dst_field)
//   set_sched_order(<expr>)
ActionCall parse_action(const std::string& text);

const char* action_op_name(ActionOp op);

struct ActionContext {
  Phv& phv;
  StatefulStore& store;
  const HeaderDefinition& hdr;
  std::uint64_t now_ns = 0;
  bool egress_stage = false;
};

// Executes one action. Stateless primitives touch only the PHV; stateful
// ones go through the store. Field arithmetic wraps modulo the field width.
// Throws EgressPortWriteInEgressStage when set_egress_port runs in the
// egress stage (the load-time validator should have made this unreachable).
void exec_action(const ActionCall& action, ActionContext& ctx);

// Static checks of one action against the declared fields and state objects.
std::vector<Diagnostic> validate_action(const ActionCall& action, const HeaderDefinition& hdr,
                                        const StatefulStore& store, bool egress_stage,
                                        const std::string& where);

}  // namespace avs

#endif  // AVS_ACTION_HPP
