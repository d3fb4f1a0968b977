// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/stateful.hpp"

#include <sstream>

namespace avs {

namespace {
constexpr unsigned __int128 kScale = 1000000000;  // tokens are byte·ns
}

MeterColor Meter::exec(std::uint64_t now_ns, std::uint64_t packet_bytes) {
  if (!primed) {
    tc_scaled = static_cast<unsigned __int128>(cbs) * kScale;
    tp_scaled = static_cast<unsigned __int128>(pbs) * kScale;
    last_update_ns = now_ns;
    primed = true;
  }
  if (now_ns > last_update_ns) {
    unsigned __int128 dt = now_ns - last_update_ns;
    tc_scaled = std::min(static_cast<unsigned __int128>(cbs) * kScale, tc_scaled + dt * cir);
    tp_scaled = std::min(static_cast<unsigned __int128>(pbs) * kScale, tp_scaled + dt * pir);
    last_update_ns = now_ns;
  }
  unsigned __int128 need = static_cast<unsigned __int128>(packet_bytes) * kScale;
  if (tp_scaled < need) return MeterColor::red;
  if (tc_scaled < need) {
    tp_scaled -= need;
    return MeterColor::yellow;
  }
  tp_scaled -= need;
  tc_scaled -= need;
  return MeterColor::green;
}

void Meter::set_param(const std::string& key, std::uint64_t value) {
  if (key == "cir") cir = value;
  else if (key == "cbs") cbs = value;
  else if (key == "pir") pir = value;
  else if (key == "pbs") pbs = value;
  else throw AvsError(ErrorCode::unknown_param, "meter parameter \"" + key + "\"");
  primed = false;  // re-prime with the new burst sizes on next use
}

void StatefulStore::declare_counter(const std::string& name) { counters_.emplace(name, 0); }

void StatefulStore::declare_register(const std::string& name, std::size_t size,
                                     std::uint64_t width) {
  Register r;
  r.width = width;
  r.cells.assign(size, 0);
  registers_.emplace(name, std::move(r));
}

void StatefulStore::declare_meter(const std::string& name, std::size_t size, Meter config) {
  meters_.emplace(name, std::vector<Meter>(std::max<std::size_t>(size, 1), config));
}

void StatefulStore::counter_inc(const std::string& name, std::uint64_t by) {
  auto it = counters_.find(name);
  if (it == counters_.end()) throw AvsError(ErrorCode::no_such_object, "counter \"" + name + "\"");
  it->second += by;
}

std::uint64_t StatefulStore::counter_read(const std::string& name) const {
  auto it = counters_.find(name);
  if (it == counters_.end()) throw AvsError(ErrorCode::no_such_object, "counter \"" + name + "\"");
  return it->second;
}

void StatefulStore::counter_reset(const std::string& name) {
  auto it = counters_.find(name);
  if (it == counters_.end()) throw AvsError(ErrorCode::no_such_object, "counter \"" + name + "\"");
  it->second = 0;
}

const Register& StatefulStore::reg(const std::string& name) const {
  auto it = registers_.find(name);
  if (it == registers_.end())
    throw AvsError(ErrorCode::no_such_object, "register \"" + name + "\"");
  return it->second;
}

std::uint64_t StatefulStore::register_read(const std::string& name, std::size_t idx) const {
  const Register& r = reg(name);
  if (idx >= r.cells.size())
    throw AvsError(ErrorCode::index_out_of_range,
                   "register \"" + name + "\" index " + std::to_string(idx) + " >= size " +
                       std::to_string(r.cells.size()));
  return r.cells[idx];
}

void StatefulStore::register_write(const std::string& name, std::size_t idx,
                                   std::uint64_t value) {
  Register& r = const_cast<Register&>(reg(name));
  if (idx >= r.cells.size())
    throw AvsError(ErrorCode::index_out_of_range,
                   "register \"" + name + "\" index " + std::to_string(idx) + " >= size " +
                       std::to_string(r.cells.size()));
  if (r.width < 64) value &= (std::uint64_t{1} << r.width) - 1;
  r.cells[idx] = value;
}

MeterColor StatefulStore::meter_exec(const std::string& name, std::size_t idx,
                                     std::uint64_t now_ns, std::uint64_t packet_bytes) {
  auto it = meters_.find(name);
  if (it == meters_.end()) throw AvsError(ErrorCode::no_such_object, "meter \"" + name + "\"");
  if (idx >= it->second.size())
    throw AvsError(ErrorCode::index_out_of_range,
                   "meter \"" + name + "\" index " + std::to_string(idx) + " >= size " +
                       std::to_string(it->second.size()));
  return it->second[idx].exec(now_ns, packet_bytes);
}

void StatefulStore::meter_set_param(const std::string& name, const std::string& key,
                                    std::uint64_t value) {
  auto it = meters_.find(name);
  if (it == meters_.end()) throw AvsError(ErrorCode::no_such_object, "meter \"" + name + "\"");
  for (Meter& m : it->second) m.set_param(key, value);
}

std::string StatefulStore::fingerprint() const {
  std::ostringstream os;
  for (const auto& [name, v] : counters_) os << "c:" << name << "=" << v << ";";
  for (const auto& [name, r] : registers_) {
    os << "r:" << name << "/" << r.width << "=";
    for (auto c : r.cells) os << c << ",";
    os << ";";
  }
  for (const auto& [name, arr] : meters_) {
    os << "m:" << name << "=";
    for (const Meter& m : arr)
      os << m.cir << "/" << m.cbs << "/" << m.pir << "/" << m.pbs << "/"
         << static_cast<std::uint64_t>(m.tc_scaled) << "/"
         << static_cast<std::uint64_t>(m.tp_scaled) << "/" << m.last_update_ns << "/" << m.primed
         << ",";
    os << ";";
  }
  return os.str();
}

}  // namespace avs
