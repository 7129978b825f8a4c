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

#ifndef QBE_PRF_HPP
#define QBE_PRF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "qbe/bitstring.hpp"
#include "qbe/density.hpp"
#include "qbe/rng.hpp"

namespace qbe::prf {

enum class FamilyKind {
  truly_random,
  xor_family,
  feistel_prp,
  ggm,
  parallel_composition,
  custom_table,
};

std::string kind_name(FamilyKind k);
FamilyKind kind_from_name(const std::string& name);

// Keyed function K x X -> Y with K = X = Y = {0,1}^n. Families are
// immutable values; evaluation is pure and deterministic for fixed
// (kind, parameters, k, x).
class FunctionFamily {
 public:
  // F(k, x) = k ^ x.
  static FunctionFamily xor_family(int n);

  // Deterministic stand-in for f <- Func_n: a fresh, uniform-looking value
  // per point (k, x), fixed by the seed.
  static FunctionFamily truly_random(int n, std::uint64_t seed);

  // F(k, x) = P(k ^ x) for a fixed seeded balanced Feistel permutation P.
  // Bijective in x for each key and in k for each input, both structurally.
  // Requires even n and rounds >= 3.
  static FunctionFamily feistel(int n, std::uint64_t seed, int rounds = 4);

  // Tree construction over two fixed seeded permutations G_0, G_1 applied
  // to the key, innermost selector being the last input bit. A key
  // permutation for every input by construction.
  static FunctionFamily ggm(int n, std::uint64_t seed, int rounds = 4);

  // Key k1||k2, input x1||x2, output F(k1,x1) || G(k2,x2).
  static FunctionFamily parallel(const FunctionFamily& f, const FunctionFamily& g);

  // Explicit table, outputs[(k << n) | x]; n <= 8.
  static FunctionFamily custom_table(int n, std::vector<std::uint32_t> outputs);

  FamilyKind kind() const;
  int n() const;
  std::uint64_t seed() const;

  BitString eval(const BitString& k, const BitString& x) const;

  // x from y = eval(k, x); available for the structurally invertible
  // kinds (xor, feistel), throws otherwise.
  BitString invert(const BitString& k, const BitString& y) const;

  // True when k -> eval(k, x) is a bijection for every x by construction.
  bool structurally_key_permutation() const;

  // {"kind":..., "n":..., "seed":..., "rounds":?, "sub":?, "table":?}
  nlohmann::json descriptor() const;
  static FunctionFamily from_descriptor(const nlohmann::json& j);

  struct Impl;
  explicit FunctionFamily(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

// A family instance pinned to one internal key and used as a single-input
// permutation; rejects (by exhaustive check) families whose per-key input
// map is not a bijection.
class KeyedPermutation {
 public:
  KeyedPermutation(FunctionFamily family, BitString key);

  int n() const { return key_.n(); }
  BitString apply(const BitString& u) const { return family_.eval(key_, u); }

 private:
  FunctionFamily family_;
  BitString key_;
};

// G_{x_1}( ... G_{x_{n-1}}( G_{x_n}(k) ) ... ): the last input bit selects
// the innermost permutation.
BitString ggm_eval(const KeyedPermutation& g0, const KeyedPermutation& g1,
                   const BitString& k, const BitString& x);

// Exhaustive over the 2^n keys; n <= 16.
bool is_key_permutation(const FunctionFamily& family, const BitString& x);

// |x>|y> -> |x>|y ^ f(x)> on a 2n-qubit state (x in the first n qubits).
PureState oracle_apply(const FunctionFamily& family, const BitString& k,
                       const PureState& state);

FunctionFamily parallel_compose(const FunctionFamily& f, const FunctionFamily& g);

// ---- Empirical distinguishing ----

class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual int n() const = 0;
  virtual BitString query(const BitString& x) = 0;
};

// Classical oracle for one family instance under a hidden key.
class FamilyOracle final : public Oracle {
 public:
  FamilyOracle(const FunctionFamily& family, BitString key)
      : family_(family), key_(key) {}
  int n() const override { return family_.n(); }
  BitString query(const BitString& x) override { return family_.eval(key_, x); }

 private:
  FunctionFamily family_;
  BitString key_;
};

// Query log: every (x, y) pair answered by the oracle.
struct OracleTranscript {
  std::vector<std::pair<BitString, BitString>> queries;
};

class RecordingOracle final : public Oracle {
 public:
  RecordingOracle(Oracle& inner, OracleTranscript& log) : inner_(inner), log_(log) {}
  int n() const override { return inner_.n(); }
  BitString query(const BitString& x) override {
    const BitString y = inner_.query(x);
    log_.queries.emplace_back(x, y);
    return y;
  }

 private:
  Oracle& inner_;
  OracleTranscript& log_;
};

// A distinguisher making classical queries; must be deterministic given the
// oracle answers and the coin source.
class QueryStrategy {
 public:
  virtual ~QueryStrategy() = default;
  virtual std::string name() const = 0;
  virtual int distinguish(Oracle& oracle, RandomSource& coins) const = 0;
};

// Outputs 1 unconditionally; the advantage baseline.
class AlwaysOneStrategy final : public QueryStrategy {
 public:
  std::string name() const override { return "always_one"; }
  int distinguish(Oracle&, RandomSource&) const override { return 1; }
};

// Queries two distinct points and outputs 1 iff f(x) ^ x agrees on both;
// catches the xor family, where f(x) ^ x is the key.
class XorOffsetStrategy final : public QueryStrategy {
 public:
  std::string name() const override { return "xor_offset"; }
  int distinguish(Oracle& oracle, RandomSource& coins) const override;
};

struct AdvantageEstimate {
  double advantage = 0.0;
  double half_width = 0.0;  // binomial 95%
  double p_family = 0.0;
  double p_random = 0.0;
  long trials = 0;
};

// Monte-Carlo standard-security advantage of the strategy against the
// truly-random baseline. Bit-reproducible for a fixed (trials, seed).
AdvantageEstimate estimate_advantage(const QueryStrategy& adversary,
                                     const FunctionFamily& family, long trials,
                                     std::uint64_t seed);

// ---- Pairwise-independence statistic ----

struct PairwiseReport {
  int n = 0;
  long trials = 0;
  double dof = 0.0;
  double band_low = 0.0;   // central 99% chi-square band
  double band_high = 0.0;
  double chi2_same_input = 0.0;
  double chi2_independent_input = 0.0;
  bool same_input_in_band = false;
  bool independent_input_in_band = false;
  // Number of distinct values of F_k1(x) ^ F_k2(x) under one fixed key
  // pair; 1 means a deterministic correlation across queries.
  long distinct_same_input_xors = 0;
  nlohmann::json to_json() const;
};

// Paired-output histogram versus uniform on 2n bits: chi-square with the
// key pair resampled per trial (the paired-key output distribution
// includes the key draw), in both the same-input and independent-input
// query regimes, plus a fixed-key xor-collision count. This is a
// statistic, not a security verdict. The band flags assume the usual
// chi-square regime: trials well below the 2^{3n} draw combinations (a
// fixed family is one function, so its pushforward deviates from uniform
// once trials approach that count) and a few counts expected per bin.
PairwiseReport pairwise_independence_test(const FunctionFamily& family,
                                          long trials, std::uint64_t seed);

}  // namespace qbe::prf

#endif
