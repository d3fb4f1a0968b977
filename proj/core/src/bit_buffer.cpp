// Copyright 2026 The AVS Authors
// SPDX-License-Identifier: Apache-2.0

#include "avs/bit_buffer.hpp"

#include <algorithm>
#include <cctype>

namespace avs {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitBuffer BitBuffer::zeros(std::size_t bit_length) {
  BitBuffer b;
  b.bit_length_ = bit_length;
  b.bytes_.assign((bit_length + 7) / 8, 0);
  return b;
}

BitBuffer BitBuffer::from_bytes(std::span<const std::uint8_t> bytes) {
  BitBuffer b;
  b.bytes_.assign(bytes.begin(), bytes.end());
  b.bit_length_ = bytes.size() * 8;
  return b;
}

BitBuffer BitBuffer::from_hex(std::string_view hex) {
  if (hex.rfind("0x", 0) == 0 || hex.rfind("0X", 0) == 0) hex.remove_prefix(2);
  BitBuffer b = zeros(hex.size() * 4);
  std::size_t pos = 0;
  for (char c : hex) {
    int d = hex_digit(c);
    if (d < 0) throw AvsError(ErrorCode::malformed_line, "bad hex digit in \"" + std::string(hex) + "\"");
    for (int i = 3; i >= 0; --i) b.set_bit(pos++, (d >> i) & 1);
  }
  return b;
}

BitBuffer BitBuffer::from_uint(std::uint64_t value, std::size_t bit_length) {
  if (bit_length > 64) throw AvsError(ErrorCode::field_too_wide, "from_uint limited to 64 bits");
  if (bit_length < 64 && bit_length > 0 && (value >> bit_length) != 0)
    throw AvsError(ErrorCode::width_mismatch,
                   "value does not fit in " + std::to_string(bit_length) + " bits");
  if (bit_length == 0 && value != 0)
    throw AvsError(ErrorCode::width_mismatch, "nonzero value in zero-width field");
  BitBuffer b = zeros(bit_length);
  for (std::size_t i = 0; i < bit_length; ++i)
    b.set_bit(i, (value >> (bit_length - 1 - i)) & 1);
  return b;
}

BitBuffer BitBuffer::from_value_string(std::string_view text, std::size_t bit_length) {
  if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0) {
    BitBuffer raw = from_hex(text);
    // Fit into bit_length: strip leading zero bits, then left-pad.
    std::size_t first_one = raw.bit_length();
    for (std::size_t i = 0; i < raw.bit_length(); ++i) {
      if (raw.bit(i)) { first_one = i; break; }
    }
    std::size_t significant = raw.bit_length() - std::min(first_one, raw.bit_length());
    if (significant > bit_length)
      throw AvsError(ErrorCode::width_mismatch,
                     "value \"" + std::string(text) + "\" does not fit in " +
                         std::to_string(bit_length) + " bits");
    BitBuffer b = zeros(bit_length);
    for (std::size_t i = 0; i < significant; ++i)
      b.set_bit(bit_length - significant + i, raw.bit(first_one + i));
    return b;
  }
  std::uint64_t v = 0;
  if (text.empty()) throw AvsError(ErrorCode::malformed_line, "empty value literal");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw AvsError(ErrorCode::malformed_line, "bad value literal \"" + std::string(text) + "\"");
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return from_uint(v, bit_length);
}

bool BitBuffer::bit(std::size_t pos) const {
  if (pos >= bit_length_) throw AvsError(ErrorCode::out_of_bounds, "bit index " + std::to_string(pos));
  return (bytes_[pos / 8] >> (7 - pos % 8)) & 1;
}

void BitBuffer::set_bit(std::size_t pos, bool value) {
  if (pos >= bit_length_) throw AvsError(ErrorCode::out_of_bounds, "bit index " + std::to_string(pos));
  std::uint8_t mask = static_cast<std::uint8_t>(1u << (7 - pos % 8));
  if (value)
    bytes_[pos / 8] |= mask;
  else
    bytes_[pos / 8] &= static_cast<std::uint8_t>(~mask);
}

BitBuffer BitBuffer::slice(std::size_t start_bit, std::size_t length_bits) const {
  if (start_bit + length_bits > bit_length_)
    throw AvsError(ErrorCode::out_of_bounds,
                   "slice [" + std::to_string(start_bit) + ", +" + std::to_string(length_bits) +
                       ") exceeds " + std::to_string(bit_length_) + " bits");
  BitBuffer out = zeros(length_bits);
  for (std::size_t i = 0; i < length_bits; ++i) out.set_bit(i, bit(start_bit + i));
  return out;
}

void BitBuffer::append(const BitBuffer& other) {
  std::size_t old_len = bit_length_;
  bit_length_ += other.bit_length_;
  bytes_.resize((bit_length_ + 7) / 8, 0);
  for (std::size_t i = 0; i < other.bit_length_; ++i) set_bit(old_len + i, other.bit(i));
}

std::uint64_t BitBuffer::as_uint() const {
  if (bit_length_ > 64)
    throw AvsError(ErrorCode::field_too_wide,
                   std::to_string(bit_length_) + "-bit value does not fit in uint64");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bit_length_; ++i) v = (v << 1) | (bit(i) ? 1u : 0u);
  return v;
}

std::string BitBuffer::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  std::size_t nbytes = (bit_length_ + 7) / 8;
  s.reserve(nbytes * 2);
  for (std::size_t i = 0; i < nbytes; ++i) {
    s.push_back(digits[bytes_[i] >> 4]);
    s.push_back(digits[bytes_[i] & 0xF]);
  }
  return s;
}

std::vector<std::uint8_t> BitBuffer::to_bytes() const {
  std::vector<std::uint8_t> out(bytes_.begin(), bytes_.begin() + (bit_length_ + 7) / 8);
  return out;
}

bool BitBuffer::operator==(const BitBuffer& other) const {
  if (bit_length_ != other.bit_length_) return false;
  std::size_t full = bit_length_ / 8;
  if (!std::equal(bytes_.begin(), bytes_.begin() + full, other.bytes_.begin())) return false;
  for (std::size_t i = full * 8; i < bit_length_; ++i)
    if (bit(i) != other.bit(i)) return false;
  return true;
}

std::strong_ordering BitBuffer::compare_numeric(const BitBuffer& a, const BitBuffer& b) {
  // Skip leading zeros, then longer magnitude wins, then lexicographic.
  std::size_t ia = 0, ib = 0;
  while (ia < a.bit_length_ && !a.bit(ia)) ++ia;
  while (ib < b.bit_length_ && !b.bit(ib)) ++ib;
  std::size_t la = a.bit_length_ - ia, lb = b.bit_length_ - ib;
  if (la != lb) return la <=> lb;
  for (std::size_t i = 0; i < la; ++i) {
    bool ba = a.bit(ia + i), bb = b.bit(ib + i);
    if (ba != bb) return ba ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

bool BitBuffer::prefix_equal(const BitBuffer& a, const BitBuffer& b, std::size_t prefix_bits) {
  if (prefix_bits > a.bit_length_ || prefix_bits > b.bit_length_)
    throw AvsError(ErrorCode::out_of_bounds, "prefix length exceeds buffer");
  for (std::size_t i = 0; i < prefix_bits; ++i)
    if (a.bit(i) != b.bit(i)) return false;
  return true;
}

namespace {
BitBuffer bitwise(const BitBuffer& a, const BitBuffer& b, int op) {
  if (a.bit_length() != b.bit_length())
    throw AvsError(ErrorCode::width_mismatch, "bitwise op over different widths");
  BitBuffer out = BitBuffer::zeros(a.bit_length());
  for (std::size_t i = 0; i < a.bit_length(); ++i) {
    bool ba = a.bit(i), bb = b.bit(i);
    bool r = op == 0 ? (ba && bb) : op == 1 ? (ba || bb) : (ba != bb);
    out.set_bit(i, r);
  }
  return out;
}
}  // namespace

BitBuffer BitBuffer::bit_and(const BitBuffer& a, const BitBuffer& b) { return bitwise(a, b, 0); }
BitBuffer BitBuffer::bit_or(const BitBuffer& a, const BitBuffer& b) { return bitwise(a, b, 1); }
BitBuffer BitBuffer::bit_xor(const BitBuffer& a, const BitBuffer& b) { return bitwise(a, b, 2); }

}  // namespace avs
