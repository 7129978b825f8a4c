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

#include "qbe/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace qbe::scheme {

KeyPair keygen(int n, RandomSource& rng) {
  return KeyPair{rng.next_bits(n), rng.next_bits(n)};
}

std::string label_name(Bb84Label l) {
  switch (l) {
    case Bb84Label::Z0: return "Z0";
    case Bb84Label::Z1: return "Z1";
    case Bb84Label::P: return "P";
    case Bb84Label::M: return "M";
  }
  throw std::logic_error("unreachable");
}

Bb84Label label_from_name(const std::string& s) {
  if (s == "Z0") return Bb84Label::Z0;
  if (s == "Z1") return Bb84Label::Z1;
  if (s == "P") return Bb84Label::P;
  if (s == "M") return Bb84Label::M;
  throw std::invalid_argument("unknown qubit label: " + s);
}

PureState label_state(Bb84Label l) {
  switch (l) {
    case Bb84Label::Z0: return PureState::basis(1, 0);
    case Bb84Label::Z1: return PureState::basis(1, 1);
    case Bb84Label::P: return PureState::half_turn(cd{1.0, 0.0});
    case Bb84Label::M: return PureState::half_turn(cd{-1.0, 0.0});
  }
  throw std::logic_error("unreachable");
}

PureState lift_labels(const std::vector<Bb84Label>& labels) {
  if (labels.empty()) {
    throw std::invalid_argument("cannot lift an empty label sequence");
  }
  PureState s = label_state(labels[0]);
  for (std::size_t i = 1; i < labels.size(); ++i) {
    s = s.tensor(label_state(labels[i]));
  }
  return s;
}

nlohmann::json Ciphertext::to_json() const {
  nlohmann::json j;
  j["r1"] = r1.hex();
  if (r2.has_value()) {
    j["r2"] = r2->hex();
  }
  if (std::holds_alternative<DensityMatrix>(payload)) {
    j["state"] = std::get<DensityMatrix>(payload).to_json();
  } else if (std::holds_alternative<BitString>(payload)) {
    j["state"] = {{"bits", std::get<BitString>(payload).str()}};
  } else {
    nlohmann::json labels = nlohmann::json::array();
    for (Bb84Label l : std::get<std::vector<Bb84Label>>(payload)) {
      labels.push_back(label_name(l));
    }
    j["state"] = {{"labels", std::move(labels)}};
  }
  return j;
}

std::pair<BitString, BitString> classical_enc(const FunctionFamily& F, const BitString& k,
                                              const BitString& m, RandomSource& rng) {
  if (m.n() != F.n() || k.n() != F.n()) {
    throw std::invalid_argument("classical_enc: key/message length must equal the family n");
  }
  const BitString r = rng.next_bits(F.n());
  return {r, m ^ F.eval(k, r)};
}

BitString classical_dec(const FunctionFamily& F, const BitString& k, const BitString& r,
                        const BitString& c) {
  return c ^ F.eval(k, r);
}

Ciphertext qbe_single_enc_at(const FunctionFamily& F, const BitString& k,
                             const DensityMatrix& s, const BitString& r) {
  s.require_valid();
  const BitString f = F.eval(k, r);
  return Ciphertext{r, std::nullopt, pauli_apply(PauliOp::x_mask_op(f), s)};
}

Ciphertext qbe_single_enc(const FunctionFamily& F, const BitString& k,
                          const DensityMatrix& s, RandomSource& rng) {
  return qbe_single_enc_at(F, k, s, rng.next_bits(F.n()));
}

DensityMatrix qbe_single_dec(const FunctionFamily& F, const BitString& k,
                             const Ciphertext& ct) {
  const BitString f = F.eval(k, ct.r1);
  return pauli_apply(PauliOp::x_mask_op(f), ct.state());
}

DensityMatrix ehe_transform(const BitString& f_mask, const BitString& g_mask,
                            const DensityMatrix& s) {
  DensityMatrix t = pauli_apply(PauliOp::x_mask_op(f_mask), s);
  t = hadamard_all(t);
  return pauli_apply(PauliOp::x_mask_op(g_mask), t);
}

DensityMatrix ehe_untransform(const BitString& f_mask, const BitString& g_mask,
                              const DensityMatrix& s) {
  DensityMatrix t = pauli_apply(PauliOp::x_mask_op(g_mask), s);
  t = hadamard_all(t);
  return pauli_apply(PauliOp::x_mask_op(f_mask), t);
}

namespace {

void check_keys(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys) {
  if (F.n() != G.n()) {
    throw std::invalid_argument("the two families must share one block size");
  }
  if (keys.k1.n() != F.n() || keys.k2.n() != G.n()) {
    throw std::invalid_argument("key lengths must equal the scheme block size");
  }
}

}  // namespace

Ciphertext ehe_enc_at(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                      const DensityMatrix& s, const BitString& r1, const BitString& r2) {
  check_keys(F, G, keys);
  s.require_valid();
  const BitString f = F.eval(keys.k1, r1);
  const BitString g = G.eval(keys.k2, r2);
  return Ciphertext{r1, r2, ehe_transform(f, g, s)};
}

Ciphertext ehe_enc(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                   const DensityMatrix& s, RandomSource& rng) {
  const BitString r1 = rng.next_bits(F.n());
  const BitString r2 = rng.next_bits(G.n());
  return ehe_enc_at(F, G, keys, s, r1, r2);
}

DensityMatrix ehe_dec(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                      const Ciphertext& ct) {
  check_keys(F, G, keys);
  if (!ct.r2.has_value()) {
    throw std::invalid_argument("two-layer ciphertext is missing r2");
  }
  if (ct.r1.n() != F.n() || ct.r2->n() != G.n()) {
    throw std::invalid_argument("ciphertext randomness length mismatch");
  }
  const BitString f = F.eval(keys.k1, ct.r1);
  const BitString g = G.eval(keys.k2, *ct.r2);
  return ehe_untransform(f, g, ct.state());
}

DensityMatrix ehe_zx_transform(const BitString& f_mask, const BitString& g_mask,
                               const DensityMatrix& s) {
  // Conjugation by Z^g X^f; the phase relative to X^f Z^g cancels.
  return pauli_apply(PauliOp(f_mask, g_mask), s);
}

Ciphertext ehe_enc_zx_at(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                         const DensityMatrix& s, const BitString& r1, const BitString& r2) {
  check_keys(F, G, keys);
  s.require_valid();
  const BitString f = F.eval(keys.k1, r1);
  const BitString g = G.eval(keys.k2, r2);
  return Ciphertext{r1, r2, ehe_zx_transform(f, g, s)};
}

Ciphertext ehe_enc_zx(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                      const DensityMatrix& s, RandomSource& rng) {
  const BitString r1 = rng.next_bits(F.n());
  const BitString r2 = rng.next_bits(G.n());
  return ehe_enc_zx_at(F, G, keys, s, r1, r2);
}

DensityMatrix ehe_dec_zx(const FunctionFamily& F, const FunctionFamily& G, const KeyPair& keys,
                         const Ciphertext& ct) {
  check_keys(F, G, keys);
  if (!ct.r2.has_value()) {
    throw std::invalid_argument("two-layer ciphertext is missing r2");
  }
  const BitString f = F.eval(keys.k1, ct.r1);
  const BitString g = G.eval(keys.k2, *ct.r2);
  return ehe_zx_transform(f, g, ct.state());
}

Ciphertext ehe_pairwise_enc(const FunctionFamily& F, const KeyPair& keys,
                            const DensityMatrix& s, RandomSource& rng) {
  return ehe_enc(F, F, keys, s, rng);
}

DensityMatrix ehe_pairwise_dec(const FunctionFamily& F, const KeyPair& keys,
                               const Ciphertext& ct) {
  return ehe_dec(F, F, keys, ct);
}

DensityMatrix qotp_enc(const BitString& a, const BitString& b, const DensityMatrix& s) {
  return pauli_apply(PauliOp(a, b), s);
}

DensityMatrix qotp_dec(const BitString& a, const BitString& b, const DensityMatrix& s) {
  // (X^a Z^b)^2 is +-identity, so the conjugation is an involution.
  return pauli_apply(PauliOp(a, b), s);
}

DensityMatrix xczc_enc(const BitString& c, const DensityMatrix& s) {
  return pauli_apply(PauliOp(c, c), s);
}

DensityMatrix xczc_dec(const BitString& c, const DensityMatrix& s) {
  return pauli_apply(PauliOp(c, c), s);
}

Ciphertext classical_bb84_enc_at(const FunctionFamily& F, const FunctionFamily& G,
                                 const KeyPair& keys, const BitString& m,
                                 const BitString& r1, const BitString& r2) {
  check_keys(F, G, keys);
  if (m.n() != F.n()) {
    throw std::invalid_argument("message length must equal the block size");
  }
  const BitString f = F.eval(keys.k1, r1);
  // The second mask only contributes a per-qubit global phase to the
  // conjugate-basis states, so the labels depend on m ^ f alone.
  const BitString v = m ^ f;
  std::vector<Bb84Label> labels;
  labels.reserve(static_cast<std::size_t>(m.n()));
  for (int i = 0; i < m.n(); ++i) {
    labels.push_back(v.bit(i) ? Bb84Label::M : Bb84Label::P);
  }
  return Ciphertext{r1, r2, std::move(labels)};
}

Ciphertext classical_bb84_enc(const FunctionFamily& F, const FunctionFamily& G,
                              const KeyPair& keys, const BitString& m, RandomSource& rng) {
  const BitString r1 = rng.next_bits(F.n());
  const BitString r2 = rng.next_bits(G.n());
  return classical_bb84_enc_at(F, G, keys, m, r1, r2);
}

BitString classical_bb84_dec(const FunctionFamily& F, const FunctionFamily& G,
                             const KeyPair& keys, const Ciphertext& ct) {
  check_keys(F, G, keys);
  if (!ct.r2.has_value()) {
    throw std::invalid_argument("label ciphertext is missing r2");
  }
  const BitString f = F.eval(keys.k1, ct.r1);
  const auto& labels = ct.labels();
  BitString v = BitString::zeros(F.n());
  for (int i = 0; i < F.n(); ++i) {
    const Bb84Label l = labels[static_cast<std::size_t>(i)];
    if (l != Bb84Label::P && l != Bb84Label::M) {
      throw std::invalid_argument("label " + label_name(l) + " cannot come from this scheme");
    }
    v = v.with_bit(i, l == Bb84Label::M ? 1 : 0);
  }
  return v ^ f;
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::classical_be: return "classical_be";
    case Variant::qbe_single: return "qbe_single";
    case Variant::qbe_ehe: return "qbe_ehe";
    case Variant::qbe_ehe_zx: return "qbe_ehe_zx";
    case Variant::qotp: return "qotp";
    case Variant::xczc: return "xczc";
    case Variant::classical_bb84: return "classical_bb84";
  }
  throw std::logic_error("unreachable");
}

Variant variant_from_name(const std::string& s) {
  for (Variant v : all_variants()) {
    if (variant_name(v) == s) return v;
  }
  throw std::invalid_argument("unknown scheme variant: " + s);
}

const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> kAll = {
      Variant::classical_be, Variant::qbe_single, Variant::qbe_ehe,
      Variant::qbe_ehe_zx,   Variant::qotp,       Variant::xczc,
      Variant::classical_bb84,
  };
  return kAll;
}

bool variant_is_classical(Variant v) {
  return v == Variant::classical_be || v == Variant::classical_bb84;
}

void SchemeDescriptor::validate() const {
  const bool needs_two = variant == Variant::qbe_ehe || variant == Variant::qbe_ehe_zx ||
                         variant == Variant::classical_bb84;
  const bool needs_one = variant == Variant::classical_be || variant == Variant::qbe_single;
  if (needs_two) {
    if (!F.has_value() || !G.has_value()) {
      throw std::invalid_argument(variant_name(variant) + " needs families F and G");
    }
    if (F->n() != n || G->n() != n) {
      throw std::invalid_argument("family bit length must match the scheme n");
    }
  } else if (needs_one) {
    if (!F.has_value()) {
      throw std::invalid_argument(variant_name(variant) + " needs family F");
    }
    if (F->n() != n) {
      throw std::invalid_argument("family bit length must match the scheme n");
    }
  }
}

nlohmann::json SchemeDescriptor::to_json() const {
  nlohmann::json j{{"variant", variant_name(variant)}, {"n", n}};
  if (F.has_value()) j["F"] = F->descriptor();
  if (G.has_value()) j["G"] = G->descriptor();
  return j;
}

SchemeDescriptor SchemeDescriptor::from_json(const nlohmann::json& j) {
  SchemeDescriptor d;
  d.variant = variant_from_name(j.at("variant").get<std::string>());
  d.n = j.at("n").get<int>();
  if (j.contains("F")) d.F = FunctionFamily::from_descriptor(j.at("F"));
  if (j.contains("G")) d.G = FunctionFamily::from_descriptor(j.at("G"));
  d.validate();
  return d;
}

Ciphertext scheme_encrypt(const SchemeDescriptor& desc, const KeyPair& keys,
                          const Plaintext& pt, RandomSource& rng) {
  desc.validate();
  switch (desc.variant) {
    case Variant::classical_be: {
      auto [r, c] = classical_enc(*desc.F, keys.k1, std::get<BitString>(pt), rng);
      return Ciphertext{r, std::nullopt, c};
    }
    case Variant::qbe_single:
      return qbe_single_enc(*desc.F, keys.k1, std::get<DensityMatrix>(pt), rng);
    case Variant::qbe_ehe:
      return ehe_enc(*desc.F, *desc.G, keys, std::get<DensityMatrix>(pt), rng);
    case Variant::qbe_ehe_zx:
      return ehe_enc_zx(*desc.F, *desc.G, keys, std::get<DensityMatrix>(pt), rng);
    case Variant::qotp:
      return Ciphertext{BitString::zeros(0), std::nullopt,
                        qotp_enc(keys.k1, keys.k2, std::get<DensityMatrix>(pt))};
    case Variant::xczc:
      return Ciphertext{BitString::zeros(0), std::nullopt,
                        xczc_enc(keys.k1, std::get<DensityMatrix>(pt))};
    case Variant::classical_bb84:
      return classical_bb84_enc(*desc.F, *desc.G, keys, std::get<BitString>(pt), rng);
  }
  throw std::logic_error("unreachable");
}

Plaintext scheme_decrypt(const SchemeDescriptor& desc, const KeyPair& keys,
                         const Ciphertext& ct) {
  desc.validate();
  switch (desc.variant) {
    case Variant::classical_be:
      return classical_dec(*desc.F, keys.k1, ct.r1, ct.bits());
    case Variant::qbe_single:
      return qbe_single_dec(*desc.F, keys.k1, ct);
    case Variant::qbe_ehe:
      return ehe_dec(*desc.F, *desc.G, keys, ct);
    case Variant::qbe_ehe_zx:
      return ehe_dec_zx(*desc.F, *desc.G, keys, ct);
    case Variant::qotp:
      return qotp_dec(keys.k1, keys.k2, ct.state());
    case Variant::xczc:
      return xczc_dec(keys.k1, ct.state());
    case Variant::classical_bb84:
      return classical_bb84_dec(*desc.F, *desc.G, keys, ct);
  }
  throw std::logic_error("unreachable");
}

Session::Session(SchemeDescriptor desc, KeyPair keys, RandomSource& rng)
    : desc_(std::move(desc)), keys_(std::move(keys)), rng_(rng) {
  desc_.validate();
  if (desc_.variant != Variant::qbe_ehe && desc_.variant != Variant::qbe_ehe_zx) {
    throw std::invalid_argument("sessions are defined for the two-layer quantum schemes");
  }
}

Ciphertext Session::encrypt_block(const DensityMatrix& s) {
  if (awaiting_) {
    throw std::logic_error("previous block not confirmed yet");
  }
  const BitString r1 = rng_.next_bits(desc_.n);
  const BitString r2 = rng_.next_bits(desc_.n);
  const auto key = std::make_pair(r1.index(), r2.index());
  if (used_.contains(key)) {
    throw std::runtime_error("randomness collision: refusing to reuse (r1, r2)");
  }
  used_.insert(key);
  awaiting_ = true;
  if (desc_.variant == Variant::qbe_ehe) {
    return ehe_enc_at(*desc_.F, *desc_.G, keys_, s, r1, r2);
  }
  return ehe_enc_zx_at(*desc_.F, *desc_.G, keys_, s, r1, r2);
}

void Session::confirm() {
  if (!awaiting_) {
    throw std::logic_error("no block awaiting confirmation");
  }
  awaiting_ = false;
  ++confirmed_;
}

double Session::expected_collision_probability() const {
  const double space = std::pow(2.0, 2.0 * desc_.n);
  const double b = static_cast<double>(used_.size());
  // 1 - prod_{i<b} (1 - i / 2^{2n})
  double no_collision = 1.0;
  for (double i = 1.0; i < b; ++i) {
    no_collision *= 1.0 - i / space;
  }
  return 1.0 - no_collision;
}

}  // namespace qbe::scheme
