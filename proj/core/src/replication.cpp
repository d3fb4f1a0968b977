// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/replication.hpp"

namespace avs {

ReplicateOutcome replicate(Phv&& phv, const ManycastGroupTable& mgt,
                           const std::function<std::uint64_t()>& next_seq) {
  bool unicast = phv.has_meta(meta::egress_port);
  bool manycast = phv.has_meta(meta::mcast_group);
  if (!unicast && !manycast) return ReplicationDrop{"no_egress"};

  std::vector<Phv> out;
  if (manycast) {
    auto it = mgt.find(phv.meta(meta::mcast_group));
    if (it == mgt.end()) return ReplicationDrop{"no_such_group"};
    std::uint64_t idx = 0;
    for (PortId port : it->second) {
      Phv copy = phv;  // deep copy, all metadata carried forward
      copy.seq = next_seq();
      copy.set_meta(meta::egress_port, port);
      copy.set_meta(meta::copy_index, idx++);
      copy.egress_locked = true;
      out.push_back(std::move(copy));
    }
  } else {
    phv.egress_locked = true;
    out.push_back(std::move(phv));
  }
  return out;
}

void cp_set_mgt(ManycastGroupTable& mgt, std::uint64_t group_id, const std::set<PortId>& ports,
                MgtOp op, std::uint64_t port_count) {
  switch (op) {
    case MgtOp::set:
      if (ports.empty())
        throw AvsError(ErrorCode::empty_group,
                       "group " + std::to_string(group_id) + " must keep at least one member");
      for (PortId p : ports)
        if (p >= port_count)
          throw AvsError(ErrorCode::invalid_value,
                         "port " + std::to_string(p) + " does not exist on this device");
      mgt[group_id] = ports;
      break;
    case MgtOp::del:
      if (mgt.erase(group_id) == 0)
        throw AvsError(ErrorCode::no_such_group, "group " + std::to_string(group_id));
      break;
  }
}

BufferSet make_bre_buffers(std::uint64_t port_count, std::uint64_t buffer_size) {
  BufferSet bs("bre", BufferSelect::by_egress_port);
  for (std::uint64_t p = 0; p < port_count; ++p)
    bs.add_buffer(static_cast<int>(p), {buffer_size, true, true});
  return bs;
}

std::vector<Diagnostic> validate_mgt(const ManycastGroupTable& mgt, std::uint64_t port_count) {
  std::vector<Diagnostic> diags;
  for (const auto& [gid, ports] : mgt) {
    const std::string where = "mgt." + std::to_string(gid);
    if (ports.empty())
      diags.push_back({"EmptyGroup", where, "manycast group has no members"});
    for (PortId p : ports)
      if (p >= port_count)
        diags.push_back({"UnresolvedReference", where,
                         "member port " + std::to_string(p) + " does not exist"});
  }
  return diags;
}

}  // namespace avs
