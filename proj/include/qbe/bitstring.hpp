// Copyright 2026 The qbelab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QBE_BITSTRING_HPP
#define QBE_BITSTRING_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qbe {

// Index convention used everywhere in this project: bit i of an n-bit
// string is qubit i, and qubit 0 is the most significant position of the
// computational-basis index. So the string "10" is basis index 2.
class BitString {
 public:
  BitString() = default;

  BitString(int n, std::uint32_t value) : n_(n), v_(value) {
    if (n < 0 || n > 20) {
      throw std::invalid_argument("BitString length out of range: " + std::to_string(n));
    }
    if (n < 32 && (value >> n) != 0) {
      throw std::invalid_argument("BitString value does not fit in " + std::to_string(n) + " bits");
    }
  }

  static BitString zeros(int n) { return BitString(n, 0); }

  static BitString ones(int n) {
    return BitString(n, static_cast<std::uint32_t>((1u << n) - 1));
  }

  // Parses "0101..." (qubit 0 first).
  static BitString parse(const std::string& s) {
    std::uint32_t v = 0;
    for (char c : s) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("BitString::parse: invalid character in \"" + s + "\"");
      }
      v = (v << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return BitString(static_cast<int>(s.size()), v);
  }

  int n() const { return n_; }

  // The computational-basis index this string addresses.
  std::uint32_t index() const { return v_; }

  int bit(int i) const {
    check_qubit(i);
    return static_cast<int>((v_ >> (n_ - 1 - i)) & 1u);
  }

  BitString with_bit(int i, int b) const {
    check_qubit(i);
    const std::uint32_t mask = 1u << (n_ - 1 - i);
    return BitString(n_, b ? (v_ | mask) : (v_ & ~mask));
  }

  BitString operator^(const BitString& other) const {
    check_same_length(other);
    return BitString(n_, v_ ^ other.v_);
  }

  // a (.) b = sum a_i b_i mod 2.
  int dot(const BitString& other) const {
    check_same_length(other);
    return std::popcount(v_ & other.v_) & 1;
  }

  bool operator==(const BitString& other) const {
    return n_ == other.n_ && v_ == other.v_;
  }
  bool operator!=(const BitString& other) const { return !(*this == other); }
  bool operator<(const BitString& other) const {
    return n_ != other.n_ ? n_ < other.n_ : v_ < other.v_;
  }

  bool is_zero() const { return v_ == 0; }

  // High half first: this becomes the left (most significant) part.
  BitString concat(const BitString& low) const {
    return BitString(n_ + low.n_, (v_ << low.n_) | low.v_);
  }

  BitString high_half() const {
    require_even();
    return BitString(n_ / 2, v_ >> (n_ / 2));
  }

  BitString low_half() const {
    require_even();
    return BitString(n_ / 2, v_ & ((1u << (n_ / 2)) - 1));
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
      s[static_cast<std::size_t>(i)] = static_cast<char>('0' + bit(i));
    }
    return s;
  }

  // Hex rendering, ceil(n/4) digits, qubit 0 in the leading nibble.
  std::string hex() const {
    if (n_ == 0) return "";
    const int digits = (n_ + 3) / 4;
    const std::uint32_t padded = v_ << (digits * 4 - n_);
    static const char* kHex = "0123456789abcdef";
    std::string s(static_cast<std::size_t>(digits), '0');
    for (int d = 0; d < digits; ++d) {
      s[static_cast<std::size_t>(d)] = kHex[(padded >> (4 * (digits - 1 - d))) & 0xfu];
    }
    return s;
  }

  static BitString from_hex(int n, const std::string& s) {
    std::uint32_t v = 0;
    for (char c : s) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else throw std::invalid_argument("BitString::from_hex: bad digit");
      v = (v << 4) | static_cast<std::uint32_t>(d);
    }
    const int digits = (n + 3) / 4;
    if (static_cast<int>(s.size()) != digits) {
      throw std::invalid_argument("BitString::from_hex: expected " + std::to_string(digits) + " digits");
    }
    return BitString(n, v >> (digits * 4 - n));
  }

 private:
  void check_qubit(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("BitString bit index out of range");
  }
  void check_same_length(const BitString& other) const {
    if (n_ != other.n_) {
      throw std::invalid_argument("BitString length mismatch: " + std::to_string(n_) +
                                  " vs " + std::to_string(other.n_));
    }
  }
  void require_even() const {
    if (n_ % 2 != 0) throw std::invalid_argument("BitString: even length required");
  }

  int n_ = 0;
  std::uint32_t v_ = 0;
};

}  // namespace qbe

#endif
