// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_STATEFUL_HPP
#define AVS_STATEFUL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avs/errors.hpp"

namespace avs {

enum class MeterColor : std::uint8_t { green = 0, yellow = 1, red = 2 };

// Two-rate three-color marker. Rates are in bytes per second, bursts in
// bytes; token bookkeeping is exact (byte·ns granularity).
struct Meter {
  std::uint64_t cir = 0;  // committed rate, bytes/s
  std::uint64_t cbs = 0;  // committed burst, bytes
  std::uint64_t pir = 0;  // peak rate, bytes/s
  std::uint64_t pbs = 0;  // peak burst, bytes

  // Token state, scaled by 1e9 (byte·ns).
  unsigned __int128 tc_scaled = 0;
  unsigned __int128 tp_scaled = 0;
  std::uint64_t last_update_ns = 0;
  bool primed = false;

  MeterColor exec(std::uint64_t now_ns, std::uint64_t packet_bytes);
  void set_param(const std::string& key, std::uint64_t value);
};

struct Register {
  std::uint64_t width = 64;  // cell width in bits
  std::vector<std::uint64_t> cells;
};

// Flow state shared by the match-action units of a device: counters,
// register arrays and meters, declared by the loaded program.
class StatefulStore {
 public:
  void declare_counter(const std::string& name);
  void declare_register(const std::string& name, std::size_t size, std::uint64_t width);
  void declare_meter(const std::string& name, std::size_t size, Meter config);

  bool has_counter(const std::string& name) const { return counters_.count(name) != 0; }
  bool has_register(const std::string& name) const { return registers_.count(name) != 0; }
  bool has_meter(const std::string& name) const { return meters_.count(name) != 0; }

  void counter_inc(const std::string& name, std::uint64_t by = 1);
  std::uint64_t counter_read(const std::string& name) const;
  void counter_reset(const std::string& name);

  std::uint64_t register_read(const std::string& name, std::size_t idx) const;
  void register_write(const std::string& name, std::size_t idx, std::uint64_t value);

  MeterColor meter_exec(const std::string& name, std::size_t idx, std::uint64_t now_ns,
                        std::uint64_t packet_bytes);
  void meter_set_param(const std::string& name, const std::string& key, std::uint64_t value);

  const std::map<std::string, std::uint64_t>& counters() const { return counters_; }
  const std::map<std::string, Register>& registers() const { return registers_; }

  // Stable fingerprint over the whole store, for purity checks.
  std::string fingerprint() const;

 private:
  const Register& reg(const std::string& name) const;

  std::map<std::string, std::uint64_t> counters_;
  std::map<std::string, Register> registers_;
  std::map<std::string, std::vector<Meter>> meters_;
};

}  // namespace avs

#endif  // AVS_STATEFUL_HPP
