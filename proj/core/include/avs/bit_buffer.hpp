// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef AVS_BIT_BUFFER_HPP
#define AVS_BIT_BUFFER_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avs/errors.hpp"

namespace avs {

// A finite sequence of bits in network order: bit 0 is the most significant
// bit of byte 0. Packets, header field values and table keys are all stored
// this way. Read-only operations never mutate the buffer.
class BitBuffer {
 public:
  BitBuffer() = default;

  static BitBuffer zeros(std::size_t bit_length);
  static BitBuffer from_bytes(std::span<const std::uint8_t> bytes);
  // Hex string, with or without 0x prefix; 4 bits per digit.
  static BitBuffer from_hex(std::string_view hex);
  // Low `bit_length` bits of value, MSB first. bit_length <= 64.
  static BitBuffer from_uint(std::uint64_t value, std::size_t bit_length);
  // Accepts decimal ("42") or hex ("0xdeadbeef") literals and fits the value
  // into `bit_length` bits. Throws WidthMismatch if it does not fit.
  static BitBuffer from_value_string(std::string_view text, std::size_t bit_length);

  std::size_t bit_length() const { return bit_length_; }
  bool empty() const { return bit_length_ == 0; }

  bool bit(std::size_t pos) const;
  void set_bit(std::size_t pos, bool value);

  // Exactly the requested bits, most-significant first within the result.
  // Throws OutOfBounds if [start, start+length) exceeds the buffer.
  BitBuffer slice(std::size_t start_bit, std::size_t length_bits) const;

  void append(const BitBuffer& other);

  // Numeric value of the whole buffer. Throws FieldTooWide above 64 bits.
  std::uint64_t as_uint() const;

  // Lowercase hex, zero-padding the trailing partial byte if any.
  std::string to_hex() const;
  std::vector<std::uint8_t> to_bytes() const;

  bool operator==(const BitBuffer& other) const;

  // Compares as unsigned big-endian integers; buffers of different lengths
  // are compared by value, not length.
  static std::strong_ordering compare_numeric(const BitBuffer& a, const BitBuffer& b);

  // True when the first `prefix_bits` bits of both buffers agree.
  static bool prefix_equal(const BitBuffer& a, const BitBuffer& b, std::size_t prefix_bits);

  // Bitwise ops over equal-length buffers. Throws WidthMismatch otherwise.
  static BitBuffer bit_and(const BitBuffer& a, const BitBuffer& b);
  static BitBuffer bit_or(const BitBuffer& a, const BitBuffer& b);
  static BitBuffer bit_xor(const BitBuffer& a, const BitBuffer& b);

 private:
  void trim_tail();

  std::vector<std::uint8_t> bytes_;
  std::size_t bit_length_ = 0;
};

}  // namespace avs

#endif  // AVS_BIT_BUFFER_HPP
