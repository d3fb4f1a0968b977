// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/phv.hpp"

#include <algorithm>

namespace avs {

HeaderDefinition::HeaderDefinition() {
  // Standard device metadata, always present.
  add_metadata_field({meta::ingress_port, MetaType::port_id, 64, {}});
  add_metadata_field({meta::arrival_time, MetaType::timestamp_ns, 64, {}});
  add_metadata_field({meta::egress_port, MetaType::port_id, 64, {}});
  add_metadata_field({meta::unicast_flag, MetaType::uint, 1, {}});
  add_metadata_field({meta::mcast_group, MetaType::uint, 32, {}});
  add_metadata_field({meta::scheduling_order, MetaType::uint, 64, {}});
  add_metadata_field({meta::payload_offset, MetaType::uint, 32, {}});
  add_metadata_field({meta::copy_index, MetaType::uint, 32, {}});
}

const std::vector<std::string>& HeaderDefinition::standard_metadata_ids() {
  static const std::vector<std::string> ids = {
      meta::ingress_port, meta::arrival_time, meta::egress_port,  meta::unicast_flag,
      meta::mcast_group,  meta::scheduling_order, meta::payload_offset, meta::copy_index,
  };
  return ids;
}

void HeaderDefinition::add_header_field(HeaderFieldDef def) {
  header_index_[def.id] = header_fields_.size();
  header_fields_.push_back(std::move(def));
}

void HeaderDefinition::add_metadata_field(MetadataFieldDef def) {
  metadata_index_[def.id] = metadata_fields_.size();
  metadata_fields_.push_back(std::move(def));
}

bool HeaderDefinition::has_header_field(const std::string& id) const {
  return header_index_.count(id) != 0;
}

bool HeaderDefinition::has_metadata_field(const std::string& id) const {
  return metadata_index_.count(id) != 0;
}

const HeaderFieldDef& HeaderDefinition::header_field(const std::string& id) const {
  auto it = header_index_.find(id);
  if (it == header_index_.end())
    throw AvsError(ErrorCode::unknown_field, "header field \"" + id + "\"");
  return header_fields_[it->second];
}

const MetadataFieldDef& HeaderDefinition::metadata_field(const std::string& id) const {
  auto it = metadata_index_.find(id);
  if (it == metadata_index_.end())
    throw AvsError(ErrorCode::unknown_field, "metadata field \"" + id + "\"");
  return metadata_fields_[it->second];
}

std::vector<Diagnostic> HeaderDefinition::validate() const {
  std::vector<Diagnostic> diags;
  std::map<std::string, int> seen;
  for (const auto& f : header_fields_) {
    if (++seen[f.id] > 1)
      diags.push_back({"DuplicateId", "header." + f.id, "header field id declared twice"});
    if (!f.is_variable() && *f.length_bits == 0)
      diags.push_back({"ZeroLengthField", "header." + f.id, "fixed field must be at least 1 bit"});
    if (f.is_variable()) {
      if (f.length_from.empty())
        diags.push_back({"MissingLengthFrom", "header." + f.id,
                         "variable field needs length_from"});
      else if (header_index_.count(f.length_from) == 0)
        diags.push_back({"UnresolvedReference", "header." + f.id,
                         "length_from \"" + f.length_from + "\" is not a header field"});
    }
  }
  std::map<std::string, int> mseen;
  for (const auto& m : metadata_fields_) {
    if (++mseen[m.id] > 1)
      diags.push_back({"DuplicateId", "metadata." + m.id, "metadata field id declared twice"});
    if (seen.count(m.id))
      diags.push_back({"IdCollision", "metadata." + m.id,
                       "metadata id collides with a header field id"});
    if (m.type == MetaType::enumeration && m.variants.empty())
      diags.push_back({"EmptyEnum", "metadata." + m.id, "enum metadata needs variants"});
  }
  return diags;
}

const char* component_name(Component c) {
  switch (c) {
    case Component::port_in: return "port_in";
    case Component::be1: return "be1";
    case Component::pr_in: return "pr_in";
    case Component::be2: return "be2";
    case Component::mau_in: return "mau_in";
    case Component::dpr_in: return "dpr_in";
    case Component::bre: return "bre";
    case Component::pr_e: return "pr_e";
    case Component::mau_e: return "mau_e";
    case Component::dpr_e: return "dpr_e";
    case Component::sched: return "sched";
    case Component::port_e: return "port_e";
    case Component::count_: break;
  }
  return "?";
}

std::uint64_t DelayRecord::delay_ns(Component c) const {
  const Span& s = span(c);
  if (!s.entry || !s.exit) return 0;
  return *s.exit - *s.entry;
}

const BitBuffer& Phv::header(const std::string& id) const {
  auto it = header_fields.find(id);
  if (it == header_fields.end())
    throw AvsError(ErrorCode::invalid_field_read, "header field \"" + id + "\" is not valid");
  return it->second;
}

std::uint64_t Phv::meta(const std::string& id) const {
  auto it = metadata.find(id);
  if (it == metadata.end())
    throw AvsError(ErrorCode::invalid_field_read, "metadata \"" + id + "\" is not set");
  return it->second;
}

Phv make_phv(BitBuffer packet, PortId port, Timestamp arrival, std::uint64_t seq,
             std::uint64_t max_packet_length_bits) {
  if (packet.bit_length() > max_packet_length_bits)
    throw AvsError(ErrorCode::packet_too_long,
                   std::to_string(packet.bit_length()) + " bits exceeds device maximum " +
                       std::to_string(max_packet_length_bits));
  Phv phv;
  phv.data_buffer = std::move(packet);
  phv.seq = seq;
  phv.set_meta(meta::ingress_port, port);
  phv.set_meta(meta::arrival_time, arrival);
  phv.set_meta(meta::payload_offset, 0);
  return phv;
}

namespace {

// A key part may name a header field or a metadata field; header wins on the
// (load-time forbidden) chance of a name collision.
std::strong_ordering compare_part(const Phv& a, const Phv& b, const std::string& field) {
  bool ah = a.header_valid(field), bh = b.header_valid(field);
  if (ah || bh) {
    if (!ah || !bh)
      throw AvsError(ErrorCode::invalid_field_read,
                     "order key field \"" + field + "\" is not valid in both PHVs");
    return BitBuffer::compare_numeric(a.header(field), b.header(field));
  }
  if (!a.has_meta(field) || !b.has_meta(field))
    throw AvsError(ErrorCode::invalid_field_read,
                   "order key field \"" + field + "\" is not valid in both PHVs");
  return a.meta(field) <=> b.meta(field);
}

}  // namespace

std::strong_ordering compare(const Phv& a, const Phv& b, const PhvOrderKey& key) {
  for (const auto& part : key.parts) {
    auto c = compare_part(a, b, part.field);
    if (c == std::strong_ordering::equal) continue;
    if (!part.descending) return c;
    return c == std::strong_ordering::less ? std::strong_ordering::greater
                                           : std::strong_ordering::less;
  }
  // Implicit tiebreak chain; seq makes the order strict.
  if (auto c = a.meta(meta::arrival_time) <=> b.meta(meta::arrival_time); c != 0) return c;
  if (auto c = a.meta(meta::ingress_port) <=> b.meta(meta::ingress_port); c != 0) return c;
  return a.seq <=> b.seq;
}

}  // namespace avs
