// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/dpp.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace avs {

using nlohmann::json;

StatefulStore StateDecls::make_store() const {
  StatefulStore store;
  for (const auto& c : counters) store.declare_counter(c);
  for (const auto& r : registers) store.declare_register(r.name, r.size, r.width);
  for (const auto& m : meters) store.declare_meter(m.name, m.size, m.config);
  return store;
}

namespace {

// Parses a key/value literal. Accepts JSON numbers and "0x.."/decimal
// strings. With a known field width the value is fitted (or rejected);
// width 0 means unknown (variable-length field), where hex keeps its
// natural width and numbers become 64-bit.
BitBuffer parse_value(const json& j, std::uint64_t width, std::vector<Diagnostic>& diags,
                      const std::string& where) {
  try {
    if (j.is_number_unsigned() || j.is_number_integer()) {
      std::uint64_t v = j.get<std::uint64_t>();
      return BitBuffer::from_uint(v, width > 0 ? width : 64);
    }
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (width > 0) return BitBuffer::from_value_string(s, width);
      if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) return BitBuffer::from_hex(s);
      return BitBuffer::from_value_string(s, 64);
    }
    diags.push_back({"SyntaxError", where, "value must be a number or string"});
  } catch (const AvsError& e) {
    diags.push_back({"WidthMismatch", where, e.what()});
  }
  return BitBuffer::zeros(width);
}

std::optional<Component> component_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kComponentCount; ++i) {
    Component c = static_cast<Component>(i);
    if (name == component_name(c)) return c;
  }
  return std::nullopt;
}

ParseGraph parse_parser_section(const json& j, const HeaderDefinition& hdr,
                                std::vector<Diagnostic>& diags, const std::string& where) {
  ParseGraph g;
  g.start = j.value("start", "");
  g.max_depth = j.value("max_depth", std::uint64_t{64});
  if (!j.contains("nodes") || !j["nodes"].is_object()) {
    diags.push_back({"SyntaxError", where, "parser needs a \"nodes\" object"});
    return g;
  }
  for (const auto& [id, nj] : j["nodes"].items()) {
    ParseNode node;
    node.id = id;
    node.accept = nj.value("accept", false);
    if (!node.accept) {
      node.field = nj.value("field", "");
      std::uint64_t width = 0;
      if (hdr.has_header_field(node.field)) {
        const HeaderFieldDef& def = hdr.header_field(node.field);
        if (!def.is_variable()) width = *def.length_bits;
      }
      for (const auto& ej : nj.value("table", json::array())) {
        ParseTableEntry e;
        if (ej.contains("value"))
          e.value = parse_value(ej["value"], width, diags, where + "." + id);
        e.next = ej.value("next", "");
        node.table.push_back(std::move(e));
      }
    }
    g.nodes.emplace(id, std::move(node));
  }
  return g;
}

std::vector<ActionCall> parse_actions(const json& j, std::vector<Diagnostic>& diags,
                                      const std::string& where) {
  std::vector<ActionCall> actions;
  for (const auto& aj : j) {
    if (!aj.is_string()) {
      diags.push_back({"SyntaxError", where, "actions must be strings"});
      continue;
    }
    try {
      actions.push_back(parse_action(aj.get<std::string>()));
    } catch (const AvsError& e) {
      diags.push_back({"MalformedEntry", where, e.what()});
    }
  }
  return actions;
}

MatGraph parse_mat_section(const json& j, const HeaderDefinition& hdr,
                           std::vector<Diagnostic>& diags, const std::string& where) {
  MatGraph g;
  if (j.is_null()) return g;
  g.start = j.value("start", "");
  std::uint64_t insert_seq = 0;
  for (const auto& [id, nj] : j.value("nodes", json::object()).items()) {
    MatNode node;
    node.id = id;
    node.field = nj.value("field", "");
    std::uint64_t width = 64;
    if (hdr.has_header_field(node.field)) {
      const HeaderFieldDef& def = hdr.header_field(node.field);
      width = def.is_variable() ? 0 : *def.length_bits;
    }
    for (const auto& ej : nj.value("entries", json::array())) {
      MatEntry e;
      const std::string ewhere = where + "." + id;
      try {
        e.kind = match_kind_from_name(ej.value("match", "exact"));
      } catch (const AvsError& err) {
        diags.push_back({"MalformedEntry", ewhere, err.what()});
        continue;
      }
      e.priority = ej.value("priority", 0);
      e.insert_seq = insert_seq++;
      switch (e.kind) {
        case MatchKind::exact:
          e.key = parse_value(ej.value("key", json(0)), width, diags, ewhere);
          break;
        case MatchKind::lpm:
          e.key = parse_value(ej.value("key", json(0)), width, diags, ewhere);
          e.prefix_len = ej.value("prefix_len", std::size_t{0});
          break;
        case MatchKind::ternary:
          e.key = parse_value(ej.value("key", json(0)), width, diags, ewhere);
          e.mask = parse_value(ej.value("mask", json(0)), width, diags, ewhere);
          break;
        case MatchKind::range:
          e.lo = parse_value(ej.value("lo", json(0)), width, diags, ewhere);
          e.hi = parse_value(ej.value("hi", json(0)), width, diags, ewhere);
          break;
      }
      e.actions = parse_actions(ej.value("actions", json::array()), diags, ewhere);
      node.entries.push_back(std::move(e));
    }
    node.default_actions =
        parse_actions(nj.value("default_actions", json::array()), diags, where + "." + id);
    if (nj.contains("on_hit") && !nj["on_hit"].is_null())
      node.on_hit = nj["on_hit"].get<std::string>();
    if (nj.contains("on_miss") && !nj["on_miss"].is_null())
      node.on_miss = nj["on_miss"].get<std::string>();
    g.nodes.emplace(id, std::move(node));
  }
  return g;
}

DeparseGraph parse_deparse_section(const json& j, const HeaderDefinition& hdr,
                                   std::vector<Diagnostic>& diags, const std::string& where) {
  DeparseGraph g;
  std::size_t i = 0;
  for (const auto& nj : j) {
    DeparseNode node;
    const std::string nwhere = where + "[" + std::to_string(i++) + "]";
    if (nj.is_string()) {
      node.field = nj.get<std::string>();
    } else if (nj.is_object() && nj.contains("field")) {
      node.field = nj["field"].get<std::string>();
      node.emit_if_valid = nj.value("emit_if_valid", true);
    } else if (nj.is_object() && nj.contains("const")) {
      std::uint64_t width = nj.value("width", std::uint64_t{0});
      node.constant = parse_value(nj["const"], width, diags, nwhere);
      if (width == 0 && node.constant.bit_length() == 0)
        diags.push_back({"SyntaxError", nwhere, "constant node needs a width or hex value"});
    } else {
      diags.push_back({"SyntaxError", nwhere, "deparse node must be a field or a constant"});
      continue;
    }
    (void)hdr;
    g.nodes.push_back(std::move(node));
  }
  return g;
}

BufferEngineConfig parse_buffer_section(const json& j, const HeaderDefinition& hdr, bool is_be2,
                                        std::vector<Diagnostic>& diags, const std::string& where) {
  BufferEngineConfig cfg;
  if (j.is_null()) return cfg;
  cfg.enabled = j.value("enabled", false);
  for (const auto& bj : j.value("bpt", json::array())) {
    int id = bj.value("buffer", -1);
    BufferParams p;
    p.size = bj.value("size", std::uint64_t{0});
    p.rx = bj.value("rx", true);
    p.tx = bj.value("tx", true);
    if (id < 0) {
      diags.push_back({"SyntaxError", where, "BPT row needs a \"buffer\" id"});
      continue;
    }
    if (p.size == 0)
      diags.push_back({"InvalidSize", where + ".buffer" + std::to_string(id),
                       "buffer size must be positive"});
    if (cfg.bpt.count(id))
      diags.push_back({"DuplicateEntry", where + ".buffer" + std::to_string(id),
                       "buffer id declared twice"});
    cfg.bpt[id] = p;
  }
  if (!is_be2) {
    for (const auto& [port, bid] : j.value("port_map", json::object()).items())
      cfg.port_map[std::stoull(port)] = bid.get<int>();
  } else {
    for (const auto& ej : j.value("bct", json::array())) {
      BctEntry e;
      e.field = ej.value("field", "");
      std::uint64_t width = 0;
      if (hdr.has_header_field(e.field)) {
        const HeaderFieldDef& def = hdr.header_field(e.field);
        if (!def.is_variable()) width = *def.length_bits;
      } else if (hdr.has_metadata_field(e.field)) {
        width = 64;
      }
      e.value = parse_value(ej.value("value", json(0)), width, diags, where + ".bct");
      e.buffer_id = ej.value("buffer", 0);
      e.priority = ej.value("priority", 0);
      cfg.bct.push_back(std::move(e));
    }
  }
  return cfg;
}

}  // namespace

DppFile parse_dpp(const std::string& json_text, const std::string& source_name) {
  std::vector<Diagnostic> diags;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    diags.push_back({"SyntaxError", source_name, e.what()});
    throw ValidationError(std::move(diags));
  }

  DppFile dpp;
  dpp.source_name = source_name;
  try {
    // pipeline
    const json& pj = j.value("pipeline", json::object());
    dpp.pipeline.port_count = pj.value("ports", std::uint64_t{8});
    dpp.pipeline.max_packet_length_bits =
        pj.value("max_packet_length_bits", std::uint64_t{16384});
    dpp.pipeline.enable_be1 = pj.value("enable_be1", false);
    dpp.pipeline.enable_be2 = pj.value("enable_be2", true);
    dpp.pipeline.enable_egress_block = pj.value("enable_egress", true);
    dpp.pipeline.bre_buffer_size = pj.value("bre_buffer_size", std::uint64_t{1024});
    for (const auto& [name, cost] : pj.value("costs_ns", json::object()).items()) {
      auto c = component_from_name(name);
      if (!c)
        diags.push_back({"UnknownComponent", "pipeline.costs_ns", "no component \"" + name + "\""});
      else
        dpp.pipeline.set_cost_ns(*c, cost.get<std::uint64_t>());
    }

    // header + metadata
    for (const auto& fj : j.value("header", json::array())) {
      HeaderFieldDef def;
      def.id = fj.value("id", "");
      def.start_bit = fj.value("start_bit", std::uint64_t{0});
      if (fj.contains("length_bits") && fj["length_bits"].is_string()) {
        if (fj["length_bits"].get<std::string>() != "variable")
          diags.push_back({"SyntaxError", "header." + def.id,
                           "length_bits must be a number or \"variable\""});
        def.length_from = fj.value("length_from", "");
      } else {
        def.length_bits = fj.value("length_bits", std::uint64_t{0});
      }
      dpp.header.add_header_field(std::move(def));
    }
    for (const auto& mj : j.value("metadata", json::array())) {
      MetadataFieldDef def;
      def.id = mj.value("id", "");
      std::string type = mj.value("type", "uint");
      if (type == "uint") def.type = MetaType::uint;
      else if (type == "timestamp") def.type = MetaType::timestamp_ns;
      else if (type == "port") def.type = MetaType::port_id;
      else if (type == "enum") def.type = MetaType::enumeration;
      else diags.push_back({"SyntaxError", "metadata." + def.id, "unknown type \"" + type + "\""});
      def.width = mj.value("width", std::uint64_t{64});
      for (const auto& v : mj.value("variants", json::array()))
        def.variants.push_back(v.get<std::string>());
      dpp.header.add_metadata_field(std::move(def));
    }

    // parser
    const json& prj = j.value("parser", json::object());
    if (prj.contains("ingress"))
      dpp.parser_ingress = parse_parser_section(prj["ingress"], dpp.header, diags, "parse.ingress");
    else
      diags.push_back({"SyntaxError", "parser", "missing ingress parse graph"});
    if (prj.contains("egress") && !prj["egress"].is_null())
      dpp.parser_egress = parse_parser_section(prj["egress"], dpp.header, diags, "parse.egress");

    // buffers
    const json& bj = j.value("buffers", json::object());
    dpp.be1 = parse_buffer_section(bj.value("be1", json()), dpp.header, false, diags, "be1");
    dpp.be2 = parse_buffer_section(bj.value("be2", json()), dpp.header, true, diags, "be2");
    if (bj.contains("be1") && !bj["be1"].is_null() && bj["be1"].contains("enabled"))
      dpp.pipeline.enable_be1 = dpp.be1.enabled;
    if (bj.contains("be2") && !bj["be2"].is_null() && bj["be2"].contains("enabled"))
      dpp.pipeline.enable_be2 = dpp.be2.enabled;

    // mats
    const json& mj = j.value("mats", json::object());
    dpp.mat_ingress = parse_mat_section(mj.value("ingress", json()), dpp.header, diags,
                                        "mat.ingress");
    dpp.mat_egress = parse_mat_section(mj.value("egress", json()), dpp.header, diags, "mat.egress");

    // deparser
    const json& dj = j.value("deparser", json::object());
    if (dj.contains("ingress"))
      dpp.deparse_ingress =
          parse_deparse_section(dj["ingress"], dpp.header, diags, "deparse.ingress");
    else
      diags.push_back({"SyntaxError", "deparser", "missing ingress deparse list"});
    if (dj.contains("egress") && !dj["egress"].is_null())
      dpp.deparse_egress = parse_deparse_section(dj["egress"], dpp.header, diags, "deparse.egress");

    // mgt
    for (const auto& [gid, ports] : j.value("mgt", json::object()).items()) {
      std::set<PortId> members;
      for (const auto& p : ports) members.insert(p.get<std::uint64_t>());
      dpp.mgt[std::stoull(gid)] = std::move(members);
    }

    // scheduler
    const json& sj = j.value("scheduler", json::object());
    dpp.scheduler.algorithm = sj.value("algorithm", "fifo");
    dpp.scheduler.capacity = sj.value("capacity", std::uint64_t{1024});
    dpp.scheduler.default_rate_bps = sj.value("default_rate_bps", std::uint64_t{0});
    for (const auto& [port, rate] : sj.value("rate_bps", json::object()).items())
      dpp.scheduler.rate_bps[std::stoull(port)] = rate.get<std::uint64_t>();
    dpp.scheduler.priority_field = sj.value("priority_field", "");
    dpp.scheduler.flow_field = sj.value("flow_field", "");
    dpp.scheduler.wfq_default_weight = sj.value("default_weight", std::uint64_t{1});
    for (const auto& [flow, w] : sj.value("weights", json::object()).items()) {
      std::vector<Diagnostic> tmp;
      BitBuffer fv = parse_value(json(flow), 64, tmp, "scheduler.weights");
      diags.insert(diags.end(), tmp.begin(), tmp.end());
      dpp.scheduler.wfq_weights[fv.as_uint()] = w.get<std::uint64_t>();
    }

    // state
    const json& stj = j.value("state", json::object());
    for (const auto& c : stj.value("counters", json::array()))
      dpp.state.counters.push_back(c.get<std::string>());
    for (const auto& rj : stj.value("registers", json::array())) {
      StateDecls::RegisterDecl r;
      r.name = rj.value("name", "");
      r.size = rj.value("size", std::size_t{1});
      r.width = rj.value("width", std::uint64_t{64});
      dpp.state.registers.push_back(std::move(r));
    }
    for (const auto& mtj : stj.value("meters", json::array())) {
      StateDecls::MeterDecl m;
      m.name = mtj.value("name", "");
      m.size = mtj.value("size", std::size_t{1});
      m.config.cir = mtj.value("cir", std::uint64_t{0});
      m.config.cbs = mtj.value("cbs", std::uint64_t{0});
      m.config.pir = mtj.value("pir", std::uint64_t{0});
      m.config.pbs = mtj.value("pbs", std::uint64_t{0});
      dpp.state.meters.push_back(std::move(m));
    }
  } catch (const json::exception& e) {
    diags.push_back({"SyntaxError", source_name, e.what()});
    throw ValidationError(std::move(diags));
  }

  // Egress block defaults: programs that enable egress but omit the egress
  // parser or deparser reuse the ingress ones.
  if (dpp.pipeline.enable_egress_block) {
    if (!dpp.parser_egress) dpp.parser_egress = dpp.parser_ingress;
    if (!dpp.deparse_egress) dpp.deparse_egress = dpp.deparse_ingress;
  }

  auto more = validate_dpp(dpp);
  diags.insert(diags.end(), more.begin(), more.end());
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return dpp;
}

DppFile load_dpp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError({{"SyntaxError", path.string(), "cannot open program file"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dpp(buf.str(), path.string());
}

std::vector<Diagnostic> validate_dpp(const DppFile& dpp) {
  std::vector<Diagnostic> diags;
  auto collect = [&](std::vector<Diagnostic> more) {
    diags.insert(diags.end(), more.begin(), more.end());
  };

  if (dpp.pipeline.port_count == 0)
    diags.push_back({"InvalidValue", "pipeline", "device needs at least one port"});
  if (dpp.pipeline.max_packet_length_bits == 0)
    diags.push_back({"InvalidValue", "pipeline", "max_packet_length_bits must be positive"});

  collect(dpp.header.validate());
  collect(validate_graph(dpp.parser_ingress, dpp.header));
  if (dpp.parser_egress) collect(validate_graph(*dpp.parser_egress, dpp.header));

  StatefulStore store = dpp.state.make_store();
  collect(validate_mat_graph(dpp.mat_ingress, dpp.header, store, Stage::ingress));
  collect(validate_mat_graph(dpp.mat_egress, dpp.header, store, Stage::egress));

  collect(validate_deparse_graph(dpp.deparse_ingress, dpp.header));
  if (dpp.deparse_egress) collect(validate_deparse_graph(*dpp.deparse_egress, dpp.header));

  // BE1: the port map must point at declared buffers (0 is implicit).
  for (const auto& [port, bid] : dpp.be1.port_map) {
    if (port >= dpp.pipeline.port_count)
      diags.push_back({"UnresolvedReference", "be1.port_map",
                       "port " + std::to_string(port) + " does not exist"});
    if (bid != 0 && dpp.be1.bpt.count(bid) == 0)
      diags.push_back({"UnresolvedReference", "be1.port_map",
                       "buffer " + std::to_string(bid) + " is not in the BE1 BPT"});
  }

  // BE2: BCT fields resolve, referenced buffers exist, (field, value) unique.
  for (std::size_t i = 0; i < dpp.be2.bct.size(); ++i) {
    const BctEntry& e = dpp.be2.bct[i];
    const std::string where = "be2.bct[" + std::to_string(i) + "]";
    if (!dpp.header.has_header_field(e.field) && !dpp.header.has_metadata_field(e.field))
      diags.push_back({"UnknownField", where, "BCT matches undeclared field \"" + e.field + "\""});
    if (e.buffer_id != 0 && dpp.be2.bpt.count(e.buffer_id) == 0)
      diags.push_back({"UnresolvedReference", where,
                       "buffer " + std::to_string(e.buffer_id) + " is not in the BE2 BPT"});
    for (std::size_t k = 0; k < i; ++k)
      if (dpp.be2.bct[k].field == e.field && dpp.be2.bct[k].value == e.value)
        diags.push_back({"DuplicateEntry", where, "duplicate (field, value) BCT pair"});
  }

  collect(validate_mgt(dpp.mgt, dpp.pipeline.port_count));

  // Scheduler parameters.
  if (!Scheduler::has_algorithm(dpp.scheduler.algorithm))
    diags.push_back({"InvalidValue", "scheduler",
                     "unknown algorithm \"" + dpp.scheduler.algorithm + "\""});
  if (dpp.scheduler.capacity == 0)
    diags.push_back({"InvalidValue", "scheduler", "capacity must be positive"});
  for (const auto& [flow, w] : dpp.scheduler.wfq_weights)
    if (w == 0)
      diags.push_back({"InvalidValue", "scheduler.weights",
                       "weight for flow " + std::to_string(flow) + " must be positive"});
  if (dpp.scheduler.wfq_default_weight == 0)
    diags.push_back({"InvalidValue", "scheduler", "default_weight must be positive"});
  for (const auto& field : {dpp.scheduler.priority_field, dpp.scheduler.flow_field})
    if (!field.empty() && !dpp.header.has_header_field(field) &&
        !dpp.header.has_metadata_field(field))
      diags.push_back({"UnknownField", "scheduler",
                       "scheduler references undeclared field \"" + field + "\""});

  // State declarations.
  std::set<std::string> names;
  for (const auto& c : dpp.state.counters)
    if (!names.insert("c:" + c).second)
      diags.push_back({"DuplicateId", "state", "counter \"" + c + "\" declared twice"});
  for (const auto& r : dpp.state.registers) {
    if (!names.insert("r:" + r.name).second)
      diags.push_back({"DuplicateId", "state", "register \"" + r.name + "\" declared twice"});
    if (r.size == 0)
      diags.push_back({"InvalidSize", "state", "register \"" + r.name + "\" needs size >= 1"});
    if (r.width == 0 || r.width > 64)
      diags.push_back({"InvalidValue", "state",
                       "register \"" + r.name + "\" width must be 1..64 bits"});
  }
  for (const auto& m : dpp.state.meters)
    if (!names.insert("m:" + m.name).second)
      diags.push_back({"DuplicateId", "state", "meter \"" + m.name + "\" declared twice"});

  return diags;
}

}  // namespace avs
