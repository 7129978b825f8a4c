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

#ifndef QBE_RNG_HPP
#define QBE_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "qbe/bitstring.hpp"

namespace qbe {

// Randomness is always injected so every experiment is reproducible from a
// seed, and so tests can rig the stream (e.g. force a randomness reuse).
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual std::uint64_t next_u64() = 0;

  BitString next_bits(int n) {
    return BitString(n, static_cast<std::uint32_t>(next_u64() & ((1ull << n) - 1)));
  }

  // Uniform in [0, 1) with 53 bits; avoids std::uniform_real_distribution
  // so the stream is identical across standard libraries.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_below(std::uint64_t bound) {
    return next_u64() % bound;
  }
};

class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next_u64() override { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Replays a fixed word sequence; used to force randomness reuse and
// collisions on purpose.
class ReplayRandom final : public RandomSource {
 public:
  explicit ReplayRandom(std::vector<std::uint64_t> words, bool cycle = true)
      : words_(std::move(words)), cycle_(cycle) {
    if (words_.empty()) {
      throw std::invalid_argument("ReplayRandom: empty word list");
    }
  }

  std::uint64_t next_u64() override {
    if (pos_ == words_.size()) {
      if (!cycle_) {
        throw std::runtime_error("ReplayRandom: word sequence exhausted");
      }
      pos_ = 0;
    }
    return words_[pos_++];
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t pos_ = 0;
  bool cycle_;
};

// splitmix64 finisher; the keyed-mix building block for the deterministic
// "truly random" function tables.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a) ^ (b * 0xff51afd7ed558ccdull + 0x2545f4914f6cdd1dull));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(mix64(a, b), c);
}

}  // namespace qbe

#endif
