// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/action.hpp"

#include <cctype>
#include <sstream>

namespace avs {

namespace {

// Numeric value of a field, header first, then metadata.
std::uint64_t read_field(const Phv& phv, const std::string& id) {
  if (phv.header_valid(id)) return phv.header(id).as_uint();
  if (phv.has_meta(id)) return phv.meta(id);
  throw AvsError(ErrorCode::invalid_field_read, "field \"" + id + "\" is not valid");
}

// Bit width an assignment to `id` wraps to. Variable-length header fields
// keep the length they resolved to at parse time.
std::uint64_t write_width(const ActionContext& ctx, const std::string& id) {
  if (ctx.hdr.has_header_field(id)) {
    const HeaderFieldDef& def = ctx.hdr.header_field(id);
    if (!def.is_variable()) return *def.length_bits;
    if (!ctx.phv.header_valid(id))
      throw AvsError(ErrorCode::invalid_field_read,
                     "variable field \"" + id + "\" has no resolved length yet");
    return ctx.phv.header(id).bit_length();
  }
  if (ctx.hdr.has_metadata_field(id)) {
    const MetadataFieldDef& def = ctx.hdr.metadata_field(id);
    switch (def.type) {
      case MetaType::uint: return def.width;
      case MetaType::enumeration: return 64;
      case MetaType::timestamp_ns:
      case MetaType::port_id: return 64;
    }
  }
  throw AvsError(ErrorCode::unknown_field, "field \"" + id + "\"");
}

void write_field(ActionContext& ctx, const std::string& id, std::uint64_t value) {
  std::uint64_t width = write_width(ctx, id);
  if (width < 64) value &= (std::uint64_t{1} << width) - 1;
  if (ctx.hdr.has_header_field(id)) {
    ctx.phv.set_header(id, BitBuffer::from_uint(value, std::min<std::uint64_t>(width, 64)));
    return;
  }
  const MetadataFieldDef& def = ctx.hdr.metadata_field(id);
  if (def.type == MetaType::enumeration && value >= def.variants.size())
    throw AvsError(ErrorCode::invalid_value,
                   "enum \"" + id + "\" has no variant " + std::to_string(value));
  ctx.phv.set_meta(id, value);
}

std::uint64_t packet_bytes(const Phv& phv) { return (phv.data_buffer.bit_length() + 7) / 8; }

}  // namespace

std::uint64_t Expr::eval(const Phv& phv) const {
  std::uint64_t acc = 0;
  for (const Term& t : terms) {
    std::uint64_t v = std::holds_alternative<std::uint64_t>(t.operand)
                          ? std::get<std::uint64_t>(t.operand)
                          : read_field(phv, std::get<std::string>(t.operand));
    acc = t.negate ? acc - v : acc + v;  // wraps mod 2^64; assignment re-wraps
  }
  return acc;
}

std::vector<std::string> Expr::referenced_fields() const {
  std::vector<std::string> out;
  for (const Term& t : terms)
    if (std::holds_alternative<std::string>(t.operand))
      out.push_back(std::get<std::string>(t.operand));
  return out;
}

std::string Expr::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 || terms[i].negate) s += terms[i].negate ? " - " : " + ";
    if (std::holds_alternative<std::uint64_t>(terms[i].operand))
      s += std::to_string(std::get<std::uint64_t>(terms[i].operand));
    else
      s += std::get<std::string>(terms[i].operand);
  }
  return s.empty() ? "0" : s;
}

const char* action_op_name(ActionOp op) {
  switch (op) {
    case ActionOp::set_field: return "set_field";
    case ActionOp::copy_field: return "copy_field";
    case ActionOp::add: return "add";
    case ActionOp::sub: return "sub";
    case ActionOp::band: return "and";
    case ActionOp::bor: return "or";
    case ActionOp::bxor: return "xor";
    case ActionOp::shift: return "shift";
    case ActionOp::drop: return "drop";
    case ActionOp::set_egress_port: return "set_egress_port";
    case ActionOp::set_mcast_group: return "set_mcast_group";
    case ActionOp::counter_inc: return "counter_inc";
    case ActionOp::register_read: return "register_read";
    case ActionOp::register_write: return "register_write";
    case ActionOp::meter_exec: return "meter_exec";
    case ActionOp::set_sched_order: return "set_sched_order";
    case ActionOp::no_op: return "no_op";
  }
  return "?";
}

std::string ActionCall::to_string() const {
  std::ostringstream os;
  os << action_op_name(op);
  switch (op) {
    case ActionOp::drop:
    case ActionOp::no_op: break;
    case ActionOp::set_field:
    case ActionOp::add:
    case ActionOp::sub:
    case ActionOp::band:
    case ActionOp::bor:
    case ActionOp::bxor:
    case ActionOp::shift: os << "(" << field << ", " << expr.to_string() << ")"; break;
    case ActionOp::copy_field: os << "(" << field << ", " << source << ")"; break;
    case ActionOp::set_egress_port:
    case ActionOp::set_mcast_group: os << "(" << amount << ")"; break;
    case ActionOp::counter_inc: os << "(" << source << ", " << amount << ")"; break;
    case ActionOp::register_read:
      os << "(" << field << ", " << source << ", " << index.to_string() << ")";
      break;
    case ActionOp::register_write:
      os << "(" << source << ", " << index.to_string() << ", " << expr.to_string() << ")";
      break;
    case ActionOp::meter_exec:
      os << "(" << source << ", " << index.to_string() << ", " << field << ")";
      break;
    case ActionOp::set_sched_order: os << "(" << expr.to_string() << ")"; break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Text parsing
// ---------------------------------------------------------------------------

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::uint64_t parse_uint(const std::string& text) {
  std::string t = strip(text);
  if (t.empty()) throw AvsError(ErrorCode::malformed_entry, "empty numeric argument");
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(t, &pos, 0);  // handles 0x.. and decimal
  } catch (const std::exception&) {
    throw AvsError(ErrorCode::malformed_entry, "bad numeric argument \"" + t + "\"");
  }
  if (pos != t.size())
    throw AvsError(ErrorCode::malformed_entry, "bad numeric argument \"" + t + "\"");
  return v;
}

std::string parse_ident(const std::string& text) {
  std::string t = strip(text);
  if (t.empty() || !is_ident_start(t[0]))
    throw AvsError(ErrorCode::malformed_entry, "expected identifier, got \"" + t + "\"");
  for (char c : t)
    if (!is_ident_char(c))
      throw AvsError(ErrorCode::malformed_entry, "expected identifier, got \"" + t + "\"");
  return t;
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Expr expr;
  std::size_t i = 0;
  bool negate = false;
  bool expect_operand = true;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '+' || c == '-') {
      if (expect_operand && c == '-')
        throw AvsError(ErrorCode::malformed_entry, "unary minus not supported in \"" + text + "\"");
      if (expect_operand)
        throw AvsError(ErrorCode::malformed_entry, "misplaced operator in \"" + text + "\"");
      negate = (c == '-');
      expect_operand = true;
      ++i;
      continue;
    }
    if (!expect_operand)
      throw AvsError(ErrorCode::malformed_entry, "missing operator in \"" + text + "\"");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])))) ++j;
      expr.terms.push_back({negate, parse_uint(text.substr(i, j - i))});
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      expr.terms.push_back({negate, text.substr(i, j - i)});
      i = j;
    } else {
      throw AvsError(ErrorCode::malformed_entry,
                     std::string("unexpected character '") + c + "' in \"" + text + "\"");
    }
    negate = false;
    expect_operand = false;
  }
  if (expr.terms.empty() || expect_operand)
    throw AvsError(ErrorCode::malformed_entry, "incomplete expression \"" + text + "\"");
  return expr;
}

ActionCall parse_action(const std::string& text) {
  std::string t = strip(text);
  std::size_t paren = t.find('(');
  std::string name = strip(paren == std::string::npos ? t : t.substr(0, paren));
  std::vector<std::string> args;
  if (paren != std::string::npos) {
    if (t.back() != ')')
      throw AvsError(ErrorCode::malformed_entry, "unbalanced parentheses in \"" + text + "\"");
    std::string inner = t.substr(paren + 1, t.size() - paren - 2);
    std::size_t start = 0;
    if (!strip(inner).empty()) {
      for (std::size_t i = 0; i <= inner.size(); ++i) {
        if (i == inner.size() || inner[i] == ',') {
          args.push_back(strip(inner.substr(start, i - start)));
          start = i + 1;
        }
      }
    }
  }

  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw AvsError(ErrorCode::malformed_entry,
                     "wrong argument count for " + name + " in \"" + text + "\"");
  };

  ActionCall a;
  if (name == "no_op") { a.op = ActionOp::no_op; need(0, 0); }
  else if (name == "drop") { a.op = ActionOp::drop; need(0, 0); }
  else if (name == "set_field") {
    a.op = ActionOp::set_field; need(2, 2);
    a.field = parse_ident(args[0]); a.expr = parse_expr(args[1]);
  } else if (name == "copy_field") {
    a.op = ActionOp::copy_field; need(2, 2);
    a.field = parse_ident(args[0]); a.source = parse_ident(args[1]);
  } else if (name == "add" || name == "sub" || name == "and" || name == "or" || name == "xor" ||
             name == "shift") {
    a.op = name == "add"   ? ActionOp::add
           : name == "sub" ? ActionOp::sub
           : name == "and" ? ActionOp::band
           : name == "or"  ? ActionOp::bor
           : name == "xor" ? ActionOp::bxor
                           : ActionOp::shift;
    need(2, 2);
    a.field = parse_ident(args[0]); a.expr = parse_expr(args[1]);
  } else if (name == "set_egress_port") {
    a.op = ActionOp::set_egress_port; need(1, 1); a.amount = parse_uint(args[0]);
  } else if (name == "set_mcast_group") {
    a.op = ActionOp::set_mcast_group; need(1, 1); a.amount = parse_uint(args[0]);
  } else if (name == "counter_inc") {
    a.op = ActionOp::counter_inc; need(1, 2);
    a.source = parse_ident(args[0]);
    a.amount = args.size() == 2 ? parse_uint(args[1]) : 1;
  } else if (name == "register_read") {
    a.op = ActionOp::register_read; need(3, 3);
    a.field = parse_ident(args[0]); a.source = parse_ident(args[1]); a.index = parse_expr(args[2]);
  } else if (name == "register_write") {
    a.op = ActionOp::register_write; need(3, 3);
    a.source = parse_ident(args[0]); a.index = parse_expr(args[1]); a.expr = parse_expr(args[2]);
  } else if (name == "meter_exec") {
    a.op = ActionOp::meter_exec; need(3, 3);
    a.source = parse_ident(args[0]); a.index = parse_expr(args[1]); a.field = parse_ident(args[2]);
  } else if (name == "set_sched_order") {
    a.op = ActionOp::set_sched_order; need(1, 1); a.expr = parse_expr(args[0]);
  } else {
    throw AvsError(ErrorCode::malformed_entry, "unknown action \"" + name + "\"");
  }
  return a;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

void exec_action(const ActionCall& action, ActionContext& ctx) {
  Phv& phv = ctx.phv;
  switch (action.op) {
    case ActionOp::no_op:
      break;
    case ActionOp::drop:
      phv.mark_dropped("mat_drop");
      break;
    case ActionOp::set_field:
      write_field(ctx, action.field, action.expr.eval(phv));
      break;
    case ActionOp::copy_field: {
      // Bit-exact copy between header fields of the same width; numeric
      // otherwise (wraps to the destination width).
      if (phv.header_valid(action.source) && ctx.hdr.has_header_field(action.field)) {
        const HeaderFieldDef& dst = ctx.hdr.header_field(action.field);
        const BitBuffer& src = phv.header(action.source);
        if (!dst.is_variable() && *dst.length_bits == src.bit_length()) {
          phv.set_header(action.field, src);
          break;
        }
      }
      write_field(ctx, action.field, read_field(phv, action.source));
      break;
    }
    case ActionOp::add:
      write_field(ctx, action.field, read_field(phv, action.field) + action.expr.eval(phv));
      break;
    case ActionOp::sub:
      write_field(ctx, action.field, read_field(phv, action.field) - action.expr.eval(phv));
      break;
    case ActionOp::band:
      write_field(ctx, action.field, read_field(phv, action.field) & action.expr.eval(phv));
      break;
    case ActionOp::bor:
      write_field(ctx, action.field, read_field(phv, action.field) | action.expr.eval(phv));
      break;
    case ActionOp::bxor:
      write_field(ctx, action.field, read_field(phv, action.field) ^ action.expr.eval(phv));
      break;
    case ActionOp::shift: {
      std::uint64_t n = action.expr.eval(phv);
      std::uint64_t v = read_field(phv, action.field);
      write_field(ctx, action.field, n >= 64 ? 0 : v << n);
      break;
    }
    case ActionOp::set_egress_port:
      if (ctx.egress_stage || phv.egress_locked)
        throw AvsError(ErrorCode::egress_port_write,
                       "set_egress_port executed in the egress stage");
      phv.set_meta(meta::egress_port, action.amount);
      phv.set_meta(meta::unicast_flag, 1);
      phv.clear_meta(meta::mcast_group);
      break;
    case ActionOp::set_mcast_group:
      phv.set_meta(meta::mcast_group, action.amount);
      phv.set_meta(meta::unicast_flag, 0);
      phv.clear_meta(meta::egress_port);
      break;
    case ActionOp::counter_inc:
      ctx.store.counter_inc(action.source, action.amount);
      break;
    case ActionOp::register_read:
      write_field(ctx, action.field,
                  ctx.store.register_read(action.source,
                                          static_cast<std::size_t>(action.index.eval(phv))));
      break;
    case ActionOp::register_write:
      ctx.store.register_write(action.source, static_cast<std::size_t>(action.index.eval(phv)),
                               action.expr.eval(phv));
      break;
    case ActionOp::meter_exec: {
      MeterColor color =
          ctx.store.meter_exec(action.source, static_cast<std::size_t>(action.index.eval(phv)),
                               ctx.now_ns, packet_bytes(phv));
      write_field(ctx, action.field, static_cast<std::uint64_t>(color));
      break;
    }
    case ActionOp::set_sched_order:
      phv.set_meta(meta::scheduling_order, action.expr.eval(phv));
      break;
  }
}

std::vector<Diagnostic> validate_action(const ActionCall& action, const HeaderDefinition& hdr,
                                        const StatefulStore& store, bool egress_stage,
                                        const std::string& where) {
  std::vector<Diagnostic> diags;
  auto check_field = [&](const std::string& id) {
    if (!id.empty() && !hdr.has_header_field(id) && !hdr.has_metadata_field(id))
      diags.push_back({"UnknownField", where, "action references undeclared field \"" + id + "\""});
  };
  auto check_expr = [&](const Expr& e) {
    for (const auto& id : e.referenced_fields()) check_field(id);
  };

  switch (action.op) {
    case ActionOp::no_op:
    case ActionOp::drop:
      break;
    case ActionOp::set_field:
    case ActionOp::add:
    case ActionOp::sub:
    case ActionOp::band:
    case ActionOp::bor:
    case ActionOp::bxor:
    case ActionOp::shift:
      check_field(action.field);
      check_expr(action.expr);
      break;
    case ActionOp::copy_field:
      check_field(action.field);
      check_field(action.source);
      break;
    case ActionOp::set_egress_port:
      if (egress_stage)
        diags.push_back({"EgressPortWriteInEgressStage", where,
                         "egress-stage tables may not set the egress port"});
      break;
    case ActionOp::set_mcast_group:
      break;
    case ActionOp::counter_inc:
      if (!store.has_counter(action.source))
        diags.push_back({"UnresolvedReference", where,
                         "counter \"" + action.source + "\" is not declared"});
      break;
    case ActionOp::register_read:
      check_field(action.field);
      check_expr(action.index);
      if (!store.has_register(action.source))
        diags.push_back({"UnresolvedReference", where,
                         "register \"" + action.source + "\" is not declared"});
      break;
    case ActionOp::register_write:
      check_expr(action.index);
      check_expr(action.expr);
      if (!store.has_register(action.source))
        diags.push_back({"UnresolvedReference", where,
                         "register \"" + action.source + "\" is not declared"});
      break;
    case ActionOp::meter_exec:
      check_field(action.field);
      check_expr(action.index);
      if (!store.has_meter(action.source))
        diags.push_back({"UnresolvedReference", where,
                         "meter \"" + action.source + "\" is not declared"});
      break;
    case ActionOp::set_sched_order:
      check_expr(action.expr);
      break;
  }
  return diags;
}

}  // namespace avs
