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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_helpers.hpp"
#include "qbe/schemes.hpp"

using namespace qbe;
using namespace qbe::scheme;
using prf::FunctionFamily;

namespace {

SchemeDescriptor make_desc(Variant v, int n, std::uint64_t seed) {
  SchemeDescriptor d;
  d.variant = v;
  d.n = n;
  switch (v) {
    case Variant::classical_be:
    case Variant::qbe_single:
      d.F = FunctionFamily::ggm(n, seed);
      break;
    case Variant::qbe_ehe:
    case Variant::qbe_ehe_zx:
    case Variant::classical_bb84:
      d.F = FunctionFamily::ggm(n, seed);
      d.G = FunctionFamily::ggm(n, seed + 1);
      break;
    default:
      break;
  }
  return d;
}

}  // namespace

TEST_CASE("classical cipher round trip, n = 4 exhaustive") {
  const FunctionFamily F = FunctionFamily::feistel(4, 5);
  const BitString k = BitString::parse("0110");
  SeededRandom rng(1);
  for (std::uint32_t m = 0; m < 16; ++m) {
    const BitString mb(4, m);
    const auto [r, c] = classical_enc(F, k, mb, rng);
    CHECK(classical_dec(F, k, r, c) == mb);
  }

  // With the xor family, c = m ^ k ^ r.
  const FunctionFamily X = FunctionFamily::xor_family(4);
  const auto [r, c] = classical_enc(X, k, BitString::parse("1011"), rng);
  CHECK(c == (BitString::parse("1011") ^ k ^ r));

  // Same seed, same (r, c).
  SeededRandom a(77), b(77);
  const auto ca = classical_enc(F, k, BitString::parse("0101"), a);
  const auto cb = classical_enc(F, k, BitString::parse("0101"), b);
  CHECK(ca.first == cb.first);
  CHECK(ca.second == cb.second);

  // All-zero message encrypts to the mask itself.
  const auto cz = classical_enc(F, k, BitString::zeros(4), rng);
  CHECK(cz.second == F.eval(k, cz.first));
}

TEST_CASE("classical cipher against a hand table, n = 2") {
  // Table family: F(k, x) = table[(k << 2) | x], written out by hand.
  const std::vector<std::uint32_t> table = {
      1, 2, 3, 0,   // k = 00
      2, 0, 1, 3,   // k = 01
      3, 3, 0, 2,   // k = 10
      0, 1, 2, 1,   // k = 11
  };
  const FunctionFamily F = FunctionFamily::custom_table(2, table);
  const BitString k = BitString::parse("10");
  const BitString m = BitString::parse("01");
  ReplayRandom rig({2});  // forces r = 10
  const auto [r, c] = classical_enc(F, k, m, rig);
  CHECK(r == BitString::parse("10"));
  // F(10, 10) = table[10] = 0 = "00", so c = 01 ^ 00 = 01.
  CHECK(c == BitString::parse("01"));
  CHECK(classical_dec(F, k, r, c) == m);
}

TEST_CASE("single-layer scheme moves basis states by the mask") {
  const int n = 3;
  const FunctionFamily F = FunctionFamily::ggm(n, 11);
  const BitString k = BitString::parse("010");
  SeededRandom rng(2);

  for (std::uint32_t m = 0; m < 8; ++m) {
    const DensityMatrix sigma = PureState::basis(n, m).density();
    const Ciphertext ct = qbe_single_enc(F, k, sigma, rng);
    const std::uint32_t expect = m ^ F.eval(k, ct.r1).index();
    CHECK(ct.state().max_abs_diff(PureState::basis(n, expect).density()) < kTolAlg);
    CHECK(qbe_single_dec(F, k, ct).max_abs_diff(sigma) < kTolAlg);
  }

  // The maximally mixed state and |+>^n are fixed points.
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
  CHECK(qbe_single_enc(F, k, mixed, rng).state().max_abs_diff(mixed) < kTolAlg);
  const DensityMatrix plus = PureState::uniform_plus(n).density();
  CHECK(qbe_single_enc(F, k, plus, rng).state().max_abs_diff(plus) < kTolAlg);
}

TEST_CASE("encryption rejects invalid states") {
  const FunctionFamily F = FunctionFamily::feistel(2, 91);
  const FunctionFamily G = FunctionFamily::feistel(2, 92);
  const KeyPair keys{BitString::parse("01"), BitString::parse("10")};
  SeededRandom rng(14);

  DensityMatrix broken(2);
  broken.at(0, 0) = cd{1.5, 0.0};
  broken.at(1, 1) = cd{-0.5, 0.0};
  CHECK_THROWS_AS(qbe_single_enc(F, keys.k1, broken, rng), std::invalid_argument);
  CHECK_THROWS_AS(ehe_enc(F, G, keys, broken, rng), std::invalid_argument);
  CHECK_THROWS_AS(ehe_enc_zx(F, G, keys, broken, rng), std::invalid_argument);
}

TEST_CASE("two-layer round trip on random states") {
  SeededRandom rng(3);
  for (int n = 1; n <= 4; ++n) {
    const FunctionFamily F = FunctionFamily::ggm(n, 21);
    const FunctionFamily G = FunctionFamily::ggm(n, 22);
    const KeyPair keys = keygen(n, rng);
    for (int rep = 0; rep < 5; ++rep) {
      const DensityMatrix sigma = random_density_matrix(n, rng);
      const Ciphertext ct = ehe_enc(F, G, keys, sigma, rng);
      CHECK(ehe_dec(F, G, keys, ct).max_abs_diff(sigma) < kTolAlg);
    }
  }
}

TEST_CASE("two-layer ciphertext of a basis state, derived layer by layer") {
  const int n = 2;
  const FunctionFamily F = FunctionFamily::feistel(n, 31);
  const FunctionFamily G = FunctionFamily::feistel(n, 32);
  const KeyPair keys{BitString::parse("01"), BitString::parse("11")};
  const BitString r1 = BitString::parse("10");
  const BitString r2 = BitString::parse("01");

  const DensityMatrix sigma = PureState::basis(n, 2).density();
  const Ciphertext ct = ehe_enc_at(F, G, keys, sigma, r1, r2);

  // Oracle: apply the three explicit layers to the basis vector.
  const BitString f = F.eval(keys.k1, r1);
  const BitString g = G.eval(keys.k2, r2);
  const oracle::Mat u = oracle::mul(
      oracle::gate_power(oracle::gate_x(), g),
      oracle::mul(oracle::h_layer(n), oracle::gate_power(oracle::gate_x(), f)));
  const oracle::Mat expect = oracle::conjugate(u, oracle::from_density(sigma));
  CHECK(oracle::max_diff(expect, ct.state()) < kTolAlg);
}

TEST_CASE("double encryption with reused randomness shifts the basis state") {
  const int n = 3;
  const FunctionFamily F = FunctionFamily::ggm(n, 41);
  const FunctionFamily G = FunctionFamily::ggm(n, 42);
  const KeyPair keys{BitString::parse("011"), BitString::parse("100")};
  const BitString r1 = BitString::parse("001");
  const BitString r2 = BitString::parse("111");
  const BitString f = F.eval(keys.k1, r1);
  const BitString g = G.eval(keys.k2, r2);

  for (std::uint32_t m = 0; m < 8; ++m) {
    const DensityMatrix sigma = PureState::basis(n, m).density();
    const Ciphertext once = ehe_enc_at(F, G, keys, sigma, r1, r2);
    const Ciphertext twice = ehe_enc_at(F, G, keys, once.state(), r1, r2);
    const std::uint32_t shifted = m ^ (f ^ g).index();
    CHECK(twice.state().max_abs_diff(PureState::basis(n, shifted).density()) < kTolAlg);
  }
}

TEST_CASE("wrong keys leave a generic state disturbed") {
  const int n = 2;
  const FunctionFamily F = FunctionFamily::feistel(n, 51);
  const FunctionFamily G = FunctionFamily::feistel(n, 52);
  const KeyPair keys{BitString::parse("01"), BitString::parse("10")};
  const KeyPair wrong{BitString::parse("11"), BitString::parse("10")};
  SeededRandom rng(4);
  const DensityMatrix sigma = random_density_matrix(n, rng);
  const Ciphertext ct = ehe_enc(F, G, keys, sigma, rng);
  CHECK(trace_distance(ehe_dec(F, G, wrong, ct), sigma) > 1e-3);

  // Decrypting the maximally mixed state gives it back under any key.
  const Ciphertext mixed_ct = ehe_enc(F, G, keys, DensityMatrix::maximally_mixed(n), rng);
  CHECK(ehe_dec(F, G, wrong, mixed_ct).max_abs_diff(DensityMatrix::maximally_mixed(n)) <
        kTolAlg);
}

TEST_CASE("hadamard-free variant") {
  const int n = 2;
  const FunctionFamily F = FunctionFamily::feistel(n, 61);
  const FunctionFamily G = FunctionFamily::feistel(n, 62);
  const KeyPair keys{BitString::parse("10"), BitString::parse("01")};
  SeededRandom rng(5);

  // One Hadamard layer relates the two forms at identical keys/randomness.
  for (int rep = 0; rep < 5; ++rep) {
    const DensityMatrix sigma = random_density_matrix(n, rng);
    const BitString r1 = rng.next_bits(n);
    const BitString r2 = rng.next_bits(n);
    const Ciphertext zx = ehe_enc_zx_at(F, G, keys, sigma, r1, r2);
    const Ciphertext full = ehe_enc_at(F, G, keys, sigma, r1, r2);
    CHECK(hadamard_all(zx.state()).max_abs_diff(full.state()) < kTolAlg);

    CHECK(ehe_dec_zx(F, G, keys, zx).max_abs_diff(sigma) < kTolAlg);

    // Re-encrypting with the same randomness restores the plaintext.
    const Ciphertext again = ehe_enc_zx_at(F, G, keys, zx.state(), r1, r2);
    CHECK(again.state().max_abs_diff(sigma) < kTolAlg);
  }
}

TEST_CASE("same-family two-layer scheme") {
  const int n = 2;
  const FunctionFamily F = FunctionFamily::feistel(n, 71);
  const KeyPair keys{BitString::parse("01"), BitString::parse("10")};
  SeededRandom rng(6);
  const DensityMatrix sigma = random_density_matrix(n, rng);

  SeededRandom ra(99), rb(99);
  const Ciphertext via_pairwise = ehe_pairwise_enc(F, keys, sigma, ra);
  const Ciphertext via_general = ehe_enc(F, F, keys, sigma, rb);
  CHECK(via_pairwise.r1 == via_general.r1);
  CHECK(via_pairwise.state().max_abs_diff(via_general.state()) == 0.0);
  CHECK(ehe_pairwise_dec(F, keys, via_pairwise).max_abs_diff(sigma) < kTolAlg);

  // n = 2 hand instance: layers applied explicitly.
  const BitString r1 = via_pairwise.r1;
  const BitString r2 = *via_pairwise.r2;
  const oracle::Mat u = oracle::mul(
      oracle::gate_power(oracle::gate_x(), F.eval(keys.k2, r2)),
      oracle::mul(oracle::h_layer(n),
                  oracle::gate_power(oracle::gate_x(), F.eval(keys.k1, r1))));
  CHECK(oracle::max_diff(oracle::conjugate(u, oracle::from_density(sigma)),
                         via_pairwise.state()) < kTolAlg);
}

TEST_CASE("mask pad schemes") {
  // Averaging over all (a, b) on one qubit sends any state to I/2.
  SeededRandom rng(7);
  const DensityMatrix sigma = random_density_matrix(1, rng);
  DensityMatrix avg(1);
  for (std::uint32_t a = 0; a < 2; ++a) {
    for (std::uint32_t b = 0; b < 2; ++b) {
      avg.accumulate(qotp_enc(BitString(1, a), BitString(1, b), sigma), 0.25);
    }
  }
  CHECK(avg.max_abs_diff(DensityMatrix::maximally_mixed(1)) < kTolEq);

  const DensityMatrix zero = PureState::basis(1, 0).density();
  CHECK(qotp_enc(BitString::ones(1), BitString::zeros(1), zero)
            .max_abs_diff(PureState::basis(1, 1).density()) < kTolAlg);

  for (int rep = 0; rep < 5; ++rep) {
    const DensityMatrix s = random_density_matrix(2, rng);
    const BitString a = rng.next_bits(2), b = rng.next_bits(2);
    CHECK(qotp_dec(a, b, qotp_enc(a, b, s)).max_abs_diff(s) < kTolAlg);
    const BitString c = rng.next_bits(2);
    CHECK(xczc_dec(c, xczc_enc(c, s)).max_abs_diff(s) < kTolAlg);
  }

  // The correlated-mask average of (|0>+i|1>)/sqrt2 keeps its off-diagonal.
  const PureState imag_plus = PureState::half_turn(cd{0.0, 1.0});
  DensityMatrix avg_c(1);
  for (std::uint32_t c = 0; c < 2; ++c) {
    avg_c.accumulate(xczc_enc(BitString(1, c), imag_plus.density()), 0.5);
  }
  CHECK(std::abs(avg_c.at(0, 0) - cd{0.5, 0.0}) < kTolEq);
  CHECK(std::abs(avg_c.at(0, 1) - cd{0.0, -0.5}) < kTolEq);
  CHECK(std::abs(avg_c.at(1, 0) - cd{0.0, 0.5}) < kTolEq);

  DensityMatrix avg_z(1);
  for (std::uint32_t c = 0; c < 2; ++c) {
    avg_z.accumulate(xczc_enc(BitString(1, c), PureState::basis(1, 0).density()), 0.5);
  }
  CHECK(avg_z.max_abs_diff(DensityMatrix::maximally_mixed(1)) < kTolEq);
}

TEST_CASE("conjugate-basis classical encryption") {
  // All-zero masks: labels are H|m_i>.
  const FunctionFamily zero_table =
      FunctionFamily::custom_table(1, std::vector<std::uint32_t>(4, 0));
  const KeyPair zk{BitString::zeros(1), BitString::zeros(1)};
  const Ciphertext z =
      classical_bb84_enc_at(zero_table, zero_table, zk, BitString::zeros(1),
                            BitString::zeros(1), BitString::zeros(1));
  CHECK(z.labels()[0] == Bb84Label::P);
  const Ciphertext o =
      classical_bb84_enc_at(zero_table, zero_table, zk, BitString::ones(1),
                            BitString::zeros(1), BitString::zeros(1));
  CHECK(o.labels()[0] == Bb84Label::M);

  // Full-block round trip at n = 8.
  const FunctionFamily F8 = FunctionFamily::feistel(8, 83);
  const FunctionFamily G8 = FunctionFamily::feistel(8, 84);
  SeededRandom rng(8);
  const KeyPair k8 = keygen(8, rng);
  for (int rep = 0; rep < 20; ++rep) {
    const BitString m = rng.next_bits(8);
    const Ciphertext ct = classical_bb84_enc(F8, G8, k8, m, rng);
    CHECK(classical_bb84_dec(F8, G8, k8, ct) == m);
  }

  // Lifting the labels reproduces the matrix-level ciphertext on basis
  // inputs (n <= 3).
  SeededRandom rng2(9);
  for (int nn = 1; nn <= 3; ++nn) {
    const FunctionFamily Fn = FunctionFamily::ggm(nn, 85);
    const FunctionFamily Gn = FunctionFamily::ggm(nn, 86);
    const KeyPair kn = keygen(nn, rng2);
    for (std::uint32_t m = 0; m < (1u << nn); ++m) {
      const BitString mb(nn, m);
      const BitString r1 = rng2.next_bits(nn);
      const BitString r2 = rng2.next_bits(nn);
      const Ciphertext labels = classical_bb84_enc_at(Fn, Gn, kn, mb, r1, r2);
      const Ciphertext matrix =
          ehe_enc_at(Fn, Gn, kn, PureState::basis(mb).density(), r1, r2);
      CHECK(lift_labels(labels.labels()).density().max_abs_diff(matrix.state()) < kTolAlg);
    }
  }
}

TEST_CASE("scheme dispatch round trips for every variant") {
  SeededRandom rng(10);
  for (Variant v : all_variants()) {
    for (int n = 1; n <= 2; ++n) {
      const SchemeDescriptor desc = make_desc(v, n, 1000 + n);
      const KeyPair keys = keygen(n, rng);
      for (int rep = 0; rep < 5; ++rep) {
        const Plaintext pt = variant_is_classical(v)
                                 ? Plaintext{rng.next_bits(n)}
                                 : Plaintext{random_density_matrix(n, rng)};
        const Ciphertext ct = scheme_encrypt(desc, keys, pt, rng);
        const Plaintext back = scheme_decrypt(desc, keys, ct);
        if (variant_is_classical(v)) {
          CHECK(std::get<BitString>(back) == std::get<BitString>(pt));
        } else {
          CHECK(std::get<DensityMatrix>(back).max_abs_diff(std::get<DensityMatrix>(pt)) <
                kTolAlg);
        }
      }
    }
  }
}

TEST_CASE("descriptor and ciphertext json") {
  const SchemeDescriptor desc = make_desc(Variant::qbe_ehe, 2, 7);
  const auto j = desc.to_json();
  CHECK(j.at("variant") == "qbe_ehe");
  const SchemeDescriptor back = SchemeDescriptor::from_json(j);
  CHECK(back.variant == Variant::qbe_ehe);
  CHECK(back.n == 2);

  SchemeDescriptor missing;
  missing.variant = Variant::qbe_ehe;
  missing.n = 2;
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);

  SeededRandom rng(11);
  const KeyPair keys = keygen(2, rng);
  const Ciphertext ct =
      scheme_encrypt(desc, keys, Plaintext{random_density_matrix(2, rng)}, rng);
  const auto cj = ct.to_json();
  CHECK(cj.contains("r1"));
  CHECK(cj.contains("r2"));
  CHECK(cj.at("state").contains("re"));

  const SchemeDescriptor bdesc = make_desc(Variant::classical_bb84, 2, 8);
  const Ciphertext bct =
      scheme_encrypt(bdesc, keys, Plaintext{BitString::parse("10")}, rng);
  CHECK(bct.to_json().at("state").at("labels").size() == 2);
}

TEST_CASE("session discipline") {
  const SchemeDescriptor desc = make_desc(Variant::qbe_ehe, 2, 12);
  SeededRandom rng(13);
  const KeyPair keys = keygen(2, rng);
  const DensityMatrix block = random_density_matrix(2, rng);

  Session session(desc, keys, rng);
  const Ciphertext c1 = session.encrypt_block(block);
  CHECK(session.awaiting_confirmation());
  CHECK_THROWS_AS(session.encrypt_block(block), std::logic_error);
  session.confirm();
  CHECK(session.confirmed_blocks() == 1);
  const Ciphertext c2 = session.encrypt_block(block);
  session.confirm();
  CHECK(session.confirmed_blocks() == 2);
  CHECK(session.used_randomness_count() == 2);
  CHECK(!(c1.r1 == c2.r1 && *c1.r2 == *c2.r2));
  CHECK(session.expected_collision_probability() >= 0.0);
  CHECK(session.expected_collision_probability() < 1.0);
  CHECK_THROWS_AS(session.confirm(), std::logic_error);

  // A rigged generator forces the same (r1, r2) twice: the session aborts.
  ReplayRandom rigged({5, 9});
  Session doomed(desc, keys, rigged);
  (void)doomed.encrypt_block(block);
  doomed.confirm();
  CHECK_THROWS_AS(doomed.encrypt_block(block), std::runtime_error);

  // The Hadamard-free variant runs the same discipline.
  const SchemeDescriptor zx_desc = make_desc(Variant::qbe_ehe_zx, 2, 15);
  Session zx_session(zx_desc, keys, rng);
  const Ciphertext zc = zx_session.encrypt_block(block);
  zx_session.confirm();
  CHECK(ehe_dec_zx(*zx_desc.F, *zx_desc.G, keys, zc).max_abs_diff(block) < kTolAlg);

  // Sessions exist for the two-layer schemes only.
  CHECK_THROWS_AS(Session(make_desc(Variant::qotp, 2, 16), keys, rng),
                  std::invalid_argument);
}

TEST_CASE("two-layer decryption requires complete ciphertexts") {
  const FunctionFamily F = FunctionFamily::feistel(2, 93);
  const FunctionFamily G = FunctionFamily::feistel(2, 94);
  const KeyPair keys{BitString::parse("01"), BitString::parse("10")};
  SeededRandom rng(15);
  Ciphertext ct = ehe_enc(F, G, keys, random_density_matrix(2, rng), rng);
  ct.r2.reset();
  CHECK_THROWS_AS(ehe_dec(F, G, keys, ct), std::invalid_argument);
  CHECK_THROWS_AS(ehe_dec_zx(F, G, keys, ct), std::invalid_argument);
}
