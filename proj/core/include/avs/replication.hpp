// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_REPLICATION_HPP
#define AVS_REPLICATION_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "avs/buffer_engine.hpp"
#include "avs/phv.hpp"

namespace avs {

// Manycast Group Table: group id -> non-empty member port set.
using ManycastGroupTable = std::map<std::uint64_t, std::set<PortId>>;

struct ReplicationDrop {
  std::string reason;  // "no_egress" | "no_such_group"
};
using ReplicateOutcome = std::variant<std::vector<Phv>, ReplicationDrop>;

// Expands one ingress-deparsed PHV into its egress deliveries and locks the
// egress port decision. Unicast passes the PHV through untouched (n = 1).
// Manycast makes one deep copy per member port; copies differ only in
// egress_port, copy_index, and the fresh seq drawn from next_seq.
ReplicateOutcome replicate(Phv&& phv, const ManycastGroupTable& mgt,
                           const std::function<std::uint64_t()>& next_seq);

// Group membership mutation. `set` with an existing id replaces the member
// list; empty member sets are rejected.
enum class MgtOp { set, del };
void cp_set_mgt(ManycastGroupTable& mgt, std::uint64_t group_id, const std::set<PortId>& ports,
                MgtOp op, std::uint64_t port_count);

// Builds the per-egress-port buffer set the BRE drains from (buffer id ==
// port id; plain FIFO, no BCT).
BufferSet make_bre_buffers(std::uint64_t port_count, std::uint64_t buffer_size);

std::vector<Diagnostic> validate_mgt(const ManycastGroupTable& mgt, std::uint64_t port_count);

}  // namespace avs

#endif  // AVS_REPLICATION_HPP
