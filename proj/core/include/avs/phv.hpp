// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_PHV_HPP
#define AVS_PHV_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avs/bit_buffer.hpp"
#include "avs/errors.hpp"

namespace avs {

using Timestamp = std::uint64_t;  // nanoseconds
using PortId = std::uint64_t;

// ---------------------------------------------------------------------------
// Definitions
// ---------------------------------------------------------------------------

// A header field: fixed length in bits, or variable with the length taken at
// parse time from the value of an earlier field named in `length_from`.
struct HeaderFieldDef {
  std::string id;
  std::uint64_t start_bit = 0;
  std::optional<std::uint64_t> length_bits;  // nullopt = variable
  std::string length_from;                   // set when variable

  bool is_variable() const { return !length_bits.has_value(); }
};

enum class MetaType { uint, timestamp_ns, port_id, enumeration };

struct MetadataFieldDef {
  std::string id;
  MetaType type = MetaType::uint;
  std::uint64_t width = 64;                // for uint
  std::vector<std::string> variants;       // for enumeration
};

// Header + metadata field universe for a loaded program. Metadata always
// includes the standard device set; programs may extend it.
class HeaderDefinition {
 public:
  HeaderDefinition();

  void add_header_field(HeaderFieldDef def);
  void add_metadata_field(MetadataFieldDef def);

  bool has_header_field(const std::string& id) const;
  bool has_metadata_field(const std::string& id) const;
  const HeaderFieldDef& header_field(const std::string& id) const;
  const MetadataFieldDef& metadata_field(const std::string& id) const;

  // Declaration order.
  const std::vector<HeaderFieldDef>& header_fields() const { return header_fields_; }
  const std::vector<MetadataFieldDef>& metadata_fields() const { return metadata_fields_; }

  // Structural checks: unique ids, header/metadata disjointness, variable
  // length references resolve.
  std::vector<Diagnostic> validate() const;

  static const std::vector<std::string>& standard_metadata_ids();

 private:
  std::vector<HeaderFieldDef> header_fields_;
  std::vector<MetadataFieldDef> metadata_fields_;
  std::map<std::string, std::size_t> header_index_;
  std::map<std::string, std::size_t> metadata_index_;
};

// Standard metadata keys.
namespace meta {
inline constexpr const char* ingress_port = "ingress_port";
inline constexpr const char* arrival_time = "arrival_time";
inline constexpr const char* egress_port = "egress_port";
inline constexpr const char* unicast_flag = "unicast_flag";
inline constexpr const char* mcast_group = "mcast_group";
inline constexpr const char* scheduling_order = "scheduling_order";
inline constexpr const char* payload_offset = "payload_offset";
inline constexpr const char* copy_index = "copy_index";
}  // namespace meta

// ---------------------------------------------------------------------------
// Per-component delay bookkeeping
// ---------------------------------------------------------------------------

enum class Component : int {
  port_in = 0,
  be1,
  pr_in,
  be2,
  mau_in,
  dpr_in,
  bre,
  pr_e,
  mau_e,
  dpr_e,
  sched,
  port_e,
  count_,
};

constexpr std::size_t kComponentCount = static_cast<std::size_t>(Component::count_);

const char* component_name(Component c);

struct DelayRecord {
  struct Span {
    std::optional<Timestamp> entry;
    std::optional<Timestamp> exit;
  };
  std::array<Span, kComponentCount> spans;

  Span& span(Component c) { return spans[static_cast<std::size_t>(c)]; }
  const Span& span(Component c) const { return spans[static_cast<std::size_t>(c)]; }

  bool visited(Component c) const { return span(c).entry.has_value(); }
  bool complete(Component c) const { return span(c).entry && span(c).exit; }

  // exit - entry; zero for components the packet never visited.
  std::uint64_t delay_ns(Component c) const;
};

// ---------------------------------------------------------------------------
// PHV
// ---------------------------------------------------------------------------

// The packet header vector: parsed header fields plus device metadata plus
// the raw bit buffer. A field is valid iff it is present in the map; reading
// an invalid field throws InvalidFieldRead instead of yielding zero.
struct Phv {
  BitBuffer data_buffer;
  std::map<std::string, BitBuffer> header_fields;
  std::map<std::string, std::uint64_t> metadata;
  std::uint64_t seq = 0;

  bool dropped = false;
  std::string drop_reason;
  bool egress_locked = false;  // set when the PHV enters the egress stage
  DelayRecord delay;

  bool header_valid(const std::string& id) const { return header_fields.count(id) != 0; }
  const BitBuffer& header(const std::string& id) const;
  void set_header(const std::string& id, BitBuffer value) { header_fields[id] = std::move(value); }
  void invalidate_header(const std::string& id) { header_fields.erase(id); }

  bool has_meta(const std::string& id) const { return metadata.count(id) != 0; }
  std::uint64_t meta(const std::string& id) const;
  void set_meta(const std::string& id, std::uint64_t value) { metadata[id] = value; }
  void clear_meta(const std::string& id) { metadata.erase(id); }

  void mark_dropped(std::string reason) {
    dropped = true;
    drop_reason = std::move(reason);
  }
};

// Builds a fresh PHV around a received packet: stores the raw bits, stamps
// ingress port and arrival time, leaves every header field invalid. The
// whole buffer counts as payload until a parser runs.
Phv make_phv(BitBuffer packet, PortId port, Timestamp arrival, std::uint64_t seq,
             std::uint64_t max_packet_length_bits);

// ---------------------------------------------------------------------------
// Ordered PHV set support
// ---------------------------------------------------------------------------

// Lexicographic comparison chain over named fields. Every comparison falls
// through to (arrival_time, ingress_port, seq), so the induced order is
// strict and total: `equal` can never be produced for distinct PHVs.
struct PhvOrderKey {
  struct Part {
    std::string field;
    bool descending = false;
  };
  std::vector<Part> parts;
};

std::strong_ordering compare(const Phv& a, const Phv& b, const PhvOrderKey& key);

}  // namespace avs

#endif  // AVS_PHV_HPP
