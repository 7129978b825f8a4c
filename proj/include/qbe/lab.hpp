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

#ifndef QBE_LAB_HPP
#define QBE_LAB_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qbe/density.hpp"
#include "qbe/prf.hpp"
#include "qbe/schemes.hpp"

namespace qbe::lab {

using prf::FunctionFamily;

enum class Verdict { confirms_paper, violates_paper };
std::string verdict_name(Verdict v);

struct AttackReport {
  std::string experiment;
  int n = 0;
  std::optional<double> trace_distance;
  std::optional<double> success_probability;
  std::optional<double> paper_bound;
  Verdict verdict = Verdict::violates_paper;
  nlohmann::json details = nlohmann::json::object();

  bool confirms() const { return verdict == Verdict::confirms_paper; }
  nlohmann::json to_json() const;
};

// Uniform key average of one scheme's ciphertext state at fixed public
// randomness (defaults to all-zero randomness when none is given).
// Enumerable bounds: n <= 8 for single-key schemes, n <= 4 where a key
// pair is enumerated.
struct MixtureSpec {
  scheme::SchemeDescriptor scheme;
  DensityMatrix plaintext;
  std::optional<std::pair<BitString, BitString>> fixed_randomness;

  MixtureSpec(scheme::SchemeDescriptor s, DensityMatrix pt)
      : scheme(std::move(s)), plaintext(std::move(pt)) {}
};

DensityMatrix average_ciphertext(const MixtureSpec& spec);

// Side computation mirroring the coefficient chain behind the exact
// average: decompose the plaintext, apply the commutation sign rules per
// coefficient, and rebuild. Returns the max entrywise deviation from the
// enumerated average.
double symbolic_average_deviation(const FunctionFamily& F, const FunctionFamily& G,
                                  const DensityMatrix& plaintext, const BitString& r1,
                                  const BitString& r2);

// Key-average distance from I/2^n across plaintexts and several fixed
// randomness pairs; checks the key-permutation hypothesis first and
// reports when it fails.
AttackReport verify_perfect_security(const FunctionFamily& F, const FunctionFamily& G,
                                     const std::vector<DensityMatrix>& plaintexts,
                                     std::uint64_t seed, int randomness_pairs = 3);

// The X^c Z^c distinguishing experiment: exact c-average ciphertexts of
// ((|0>+i|1>)/sqrt2)^(x)n vs |0^n>, their trace distance, and the
// imaginary-basis distinguisher. The headline success composes the exact
// per-qubit failure probabilities across the block; the joint
// all-outcomes-(+i) rule and the trace-distance optimum are in details.
AttackReport prop1_attack(int n);

// Quasi-length-preserving classical layer lifted to basis permutations;
// the f-based instance is c = m ^ F(k, r).
struct ClassicalCipher {
  std::string name;
  int n = 0;
  std::function<BitString(const BitString& k, const BitString& r, const BitString& m)> enc;
  std::function<BitString(const BitString& k, const BitString& r, const BitString& c)> dec;
};

ClassicalCipher xor_prf_cipher(const FunctionFamily& F);
// c = (m + F(k, r)) mod 2^n; exercises a non-xor length-preserving layer.
ClassicalCipher modadd_prf_cipher(const FunctionFamily& F);

// Conjugation of s by the basis permutation |m> -> |enc(m)>.
DensityMatrix lift_classical(const ClassicalCipher& cipher, const BitString& k,
                             const BitString& r, const DensityMatrix& s);

// Conjugate-basis measurement attack on the single-layer scheme: exact key
// mixtures of |+>^n vs |0^n| ciphertexts; success compared against
// 1 - 1/2^n.
AttackReport thm4_attack(const FunctionFamily& F, int n, std::uint64_t seed = 1);
AttackReport thm4_attack_classical(const ClassicalCipher& cipher, int n,
                                   std::uint64_t seed = 1);

// Randomness-reuse experiment: checks the re-encryption collapse to
// X^c Z^c s Z^c X^c with c = F(k1,r1) ^ G(k2,r2), runs the induced
// distinguisher, and contrasts with a fresh-randomness key average.
AttackReport reuse_attack(const FunctionFamily& F, const FunctionFamily& G, int n,
                          std::uint64_t seed);

// Joint key-average of a multi-block encryption (one key pair across
// blocks) versus the product of per-block averages, plus an
// independent-keys control; s * n <= 6.
AttackReport multi_message_analysis(const FunctionFamily& F, const FunctionFamily& G,
                                    int block_count, int n,
                                    const std::vector<DensityMatrix>& blocks,
                                    std::uint64_t seed);

// ---- Indistinguishability game harness ----
//
// Game shape: one challenge state (chosen plaintext vs I/2^n), encryption
// oracle queries free before and after; an adversary is a measurement
// strategy reduced to its acceptance probability, which is linear in the
// state, so the exact mode evaluates it on mixtures directly.

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  virtual std::string name() const = 0;
  virtual double accept_probability(const DensityMatrix& state) const = 0;
};

class RandomGuessAdversary final : public AdversaryStrategy {
 public:
  std::string name() const override { return "random_guess"; }
  double accept_probability(const DensityMatrix&) const override { return 0.5; }
};

// Accepts iff a transversal conjugate-basis measurement returns all zeros.
class PlusBasisAdversary final : public AdversaryStrategy {
 public:
  std::string name() const override { return "plus_basis_all_zero"; }
  double accept_probability(const DensityMatrix& state) const override;
};

// Accepts iff every qubit measures to (|0>+i|1>)/sqrt2.
class ImagBasisAdversary final : public AdversaryStrategy {
 public:
  std::string name() const override { return "imag_basis_all_plus"; }
  double accept_probability(const DensityMatrix& state) const override;
};

// Exact-mixture advantage |Pr[A(avg Enc(s))] - Pr[A(avg Enc(I/2^n))]|.
AttackReport ind_game_exact(const scheme::SchemeDescriptor& desc,
                            const AdversaryStrategy& adversary,
                            const DensityMatrix& challenge, std::uint64_t seed);

// Monte-Carlo advantage with a binomial 95% half-width; deterministic
// given the seed.
AttackReport ind_game_sampled(const scheme::SchemeDescriptor& desc,
                              const AdversaryStrategy& adversary,
                              const DensityMatrix& challenge, long trials,
                              std::uint64_t seed);

}  // namespace qbe::lab

#endif
