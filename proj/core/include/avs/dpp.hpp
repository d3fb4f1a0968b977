// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_DPP_HPP
#define AVS_DPP_HPP

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "avs/buffer_engine.hpp"
#include "avs/deparser.hpp"
#include "avs/match_action.hpp"
#include "avs/parser.hpp"
#include "avs/phv.hpp"
#include "avs/replication.hpp"
#include "avs/scheduler.hpp"
#include "avs/stateful.hpp"

namespace avs {

// Fixed component wiring:
//   Port_In -> [BE1] -> PR_In -> [BE2] -> MAU_In -> DPR_In -> BRE
//           -> [PR_E -> MAU_E -> DPR_E] -> S -> Port_E
// BE1, BE2 and the whole egress block are optional per program.
struct PipelineConfig {
  std::uint64_t port_count = 8;
  std::uint64_t max_packet_length_bits = 16384;
  bool enable_be1 = false;
  bool enable_be2 = true;
  bool enable_egress_block = true;
  std::uint64_t bre_buffer_size = 1024;
  // Simulated per-component processing cost (ns); default 0 everywhere, so
  // measured delay is queueing only unless costs are configured.
  std::array<std::uint64_t, kComponentCount> costs_ns{};

  std::uint64_t cost_ns(Component c) const { return costs_ns[static_cast<std::size_t>(c)]; }
  void set_cost_ns(Component c, std::uint64_t v) { costs_ns[static_cast<std::size_t>(c)] = v; }
};

struct StateDecls {
  std::vector<std::string> counters;
  struct RegisterDecl {
    std::string name;
    std::size_t size = 1;
    std::uint64_t width = 64;
  };
  std::vector<RegisterDecl> registers;
  struct MeterDecl {
    std::string name;
    std::size_t size = 1;
    Meter config;
  };
  std::vector<MeterDecl> meters;

  StatefulStore make_store() const;
};

struct BufferEngineConfig {
  bool enabled = false;
  std::map<int, BufferParams> bpt;
  std::map<std::uint64_t, int> port_map;  // BE1 only
  std::vector<BctEntry> bct;              // BE2 only
};

// The loadable data-plane program: everything a device needs to run.
struct DppFile {
  HeaderDefinition header;
  PipelineConfig pipeline;
  ParseGraph parser_ingress;
  std::optional<ParseGraph> parser_egress;
  BufferEngineConfig be1;
  BufferEngineConfig be2;
  MatGraph mat_ingress;
  MatGraph mat_egress;
  DeparseGraph deparse_ingress;
  std::optional<DeparseGraph> deparse_egress;
  ManycastGroupTable mgt;
  SchedParams scheduler;
  StateDecls state;

  // Handy during validation and for CLI reports.
  std::string source_name;
};

// Parses and fully validates a program. Never partially loads: either the
// returned DppFile passed every static check, or a ValidationError carrying
// the complete diagnostic list is thrown.
DppFile load_dpp(const std::filesystem::path& path);
DppFile parse_dpp(const std::string& json_text, const std::string& source_name = "<inline>");

// All static checks over an already-assembled program, for callers that
// build DppFile values directly.
std::vector<Diagnostic> validate_dpp(const DppFile& dpp);

}  // namespace avs

#endif  // AVS_DPP_HPP
