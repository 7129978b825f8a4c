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

#ifndef QBE_SCHEMES_HPP
#define QBE_SCHEMES_HPP

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qbe/density.hpp"
#include "qbe/prf.hpp"
#include "qbe/rng.hpp"

namespace qbe::scheme {

using prf::FunctionFamily;

struct KeyPair {
  BitString k1;
  BitString k2;
};

KeyPair keygen(int n, RandomSource& rng);

enum class Bb84Label { Z0, Z1, P, M };

std::string label_name(Bb84Label l);
Bb84Label label_from_name(const std::string& s);
// Z0 -> |0>, Z1 -> |1>, P -> |+>, M -> |->.
PureState label_state(Bb84Label l);
PureState lift_labels(const std::vector<Bb84Label>& labels);

// Public randomness travels in the clear next to the encrypted payload.
// r1 with length 0 means the scheme draws no public randomness.
struct Ciphertext {
  BitString r1;
  std::optional<BitString> r2;
  std::variant<DensityMatrix, BitString, std::vector<Bb84Label>> payload;

  const DensityMatrix& state() const { return std::get<DensityMatrix>(payload); }
  const BitString& bits() const { return std::get<BitString>(payload); }
  const std::vector<Bb84Label>& labels() const {
    return std::get<std::vector<Bb84Label>>(payload);
  }

  nlohmann::json to_json() const;
};

// ---- Classical one-block cipher: c = m ^ F(k, r) ----

std::pair<BitString, BitString> classical_enc(const FunctionFamily& F, const BitString& k,
                                              const BitString& m, RandomSource& rng);
BitString classical_dec(const FunctionFamily& F, const BitString& k, const BitString& r,
                        const BitString& c);

// ---- Single-layer quantum scheme: X^{F(k,r)} s X^{F(k,r)} ----

Ciphertext qbe_single_enc(const FunctionFamily& F, const BitString& k,
                          const DensityMatrix& s, RandomSource& rng);
Ciphertext qbe_single_enc_at(const FunctionFamily& F, const BitString& k,
                             const DensityMatrix& s, const BitString& r);
DensityMatrix qbe_single_dec(const FunctionFamily& F, const BitString& k,
                             const Ciphertext& ct);

// ---- Two-layer scheme with the transversal Hadamard in the middle:
//      U = X^{G(k2,r2)} H^(x)n X^{F(k1,r1)} ----

DensityMatrix ehe_transform(const BitString& f_mask, const BitString& g_mask,
                            const DensityMatrix& s);
DensityMatrix ehe_untransform(const BitString& f_mask, const BitString& g_mask,
                              const DensityMatrix& s);

Ciphertext ehe_enc(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                   const DensityMatrix& s, RandomSource& rng);
Ciphertext ehe_enc_at(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                      const DensityMatrix& s, const BitString& r1, const BitString& r2);
DensityMatrix ehe_dec(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                      const Ciphertext& ct);

// Hadamard-free variant: Z^{G(k2,r2)} X^{F(k1,r1)} s X^{F} Z^{G}. The
// transform is an involution, so decryption reuses it.
DensityMatrix ehe_zx_transform(const BitString& f_mask, const BitString& g_mask,
                               const DensityMatrix& s);

Ciphertext ehe_enc_zx(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                      const DensityMatrix& s, RandomSource& rng);
Ciphertext ehe_enc_zx_at(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                         const DensityMatrix& s, const BitString& r1, const BitString& r2);
DensityMatrix ehe_dec_zx(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                         const Ciphertext& ct);

// Same family in both layers with independent keys.
Ciphertext ehe_pairwise_enc(const FunctionFamily& F, const KeyPair& keys,
                            const DensityMatrix& s, RandomSource& rng);
DensityMatrix ehe_pairwise_dec(const FunctionFamily& F, const KeyPair& keys,
                               const Ciphertext& ct);

// ---- One-use mask schemes ----

// X^a Z^b s Z^b X^a. The (a, b) pair is a one-use secret; nothing here
// prevents reuse, the session wrapper does.
DensityMatrix qotp_enc(const BitString& a, const BitString& b, const DensityMatrix& s);
DensityMatrix qotp_dec(const BitString& a, const BitString& b, const DensityMatrix& s);

// The weakened a = b case: X^c Z^c s Z^c X^c.
DensityMatrix xczc_enc(const BitString& c, const DensityMatrix& s);
DensityMatrix xczc_dec(const BitString& c, const DensityMatrix& s);

// ---- Classical messages into conjugate-basis qubits ----

Ciphertext classical_bb84_enc(const FunctionFamily& F, const FunctionFamily& G,
                              const KeyPair& keys, const BitString& m, RandomSource& rng);
Ciphertext classical_bb84_enc_at(const FunctionFamily& F, const FunctionFamily& G,
                                 const KeyPair& keys, const BitString& m,
                                 const BitString& r1, const BitString& r2);
BitString classical_bb84_dec(const FunctionFamily& F, const FunctionFamily& G,
                             const KeyPair& keys, const Ciphertext& ct);

// ---- Pluggable scheme values ----

enum class Variant {
  classical_be,
  qbe_single,
  qbe_ehe,
  qbe_ehe_zx,
  qotp,
  xczc,
  classical_bb84,
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& s);
const std::vector<Variant>& all_variants();

struct SchemeDescriptor {
  Variant variant;
  int n = 0;
  std::optional<FunctionFamily> F;
  std::optional<FunctionFamily> G;

  // Throws unless the family slots match the variant's needs.
  void validate() const;
  nlohmann::json to_json() const;
  static SchemeDescriptor from_json(const nlohmann::json& j);
};

using Plaintext = std::variant<DensityMatrix, BitString>;

bool variant_is_classical(Variant v);

Ciphertext scheme_encrypt(const SchemeDescriptor& desc, const KeyPair& keys,
                          const Plaintext& pt, RandomSource& rng);
Plaintext scheme_decrypt(const SchemeDescriptor& desc, const KeyPair& keys,
                         const Ciphertext& ct);

// ---- encrypt-decrypt-confirm session discipline ----

// One logical writer. Each block needs a confirmation before the next one
// may be encrypted, every (r1, r2) pair is recorded, and a collision with
// a recorded pair aborts instead of reusing randomness.
class Session {
 public:
  Session(SchemeDescriptor desc, KeyPair keys, RandomSource& rng);

  Ciphertext encrypt_block(const DensityMatrix& s);
  void confirm();

  bool awaiting_confirmation() const { return awaiting_; }
  long confirmed_blocks() const { return confirmed_; }
  std::size_t used_randomness_count() const { return used_.size(); }

  // Birthday estimate of the chance any collision would have occurred
  // among the draws so far; reported, never asserted.
  double expected_collision_probability() const;

 private:
  SchemeDescriptor desc_;
  KeyPair keys_;
  RandomSource& rng_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> used_;
  bool awaiting_ = false;
  long confirmed_ = 0;
};

}  // namespace qbe::scheme

#endif
