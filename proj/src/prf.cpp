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

#include "qbe/prf.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace qbe::prf {

std::string kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::truly_random: return "truly_random";
    case FamilyKind::xor_family: return "xor";
    case FamilyKind::feistel_prp: return "feistel_prp";
    case FamilyKind::ggm: return "ggm";
    case FamilyKind::parallel_composition: return "parallel_composition";
    case FamilyKind::custom_table: return "custom_table";
  }
  throw std::logic_error("unreachable");
}

FamilyKind kind_from_name(const std::string& name) {
  if (name == "truly_random") return FamilyKind::truly_random;
  if (name == "xor") return FamilyKind::xor_family;
  if (name == "feistel_prp") return FamilyKind::feistel_prp;
  if (name == "ggm") return FamilyKind::ggm;
  if (name == "parallel_composition") return FamilyKind::parallel_composition;
  if (name == "custom_table") return FamilyKind::custom_table;
  throw std::invalid_argument("unknown family kind: " + name);
}

namespace {

// Fixed seeded Feistel permutation on n bits. For even n this is the
// balanced network; odd widths alternate an (n/2, n-n/2) split, so the
// construction stays a structural bijection at every width. n = 1 falls
// back to a seeded bit flip.
std::uint32_t feistel_forward(std::uint64_t seed, int rounds, int n, std::uint32_t v) {
  if (n == 1) {
    return v ^ static_cast<std::uint32_t>(mix64(seed, 0) & 1u);
  }
  int wl = n / 2;
  int wr = n - wl;
  std::uint32_t left = v >> wr;
  std::uint32_t right = v & ((1u << wr) - 1);
  for (int t = 0; t < rounds; ++t) {
    const std::uint32_t f =
        static_cast<std::uint32_t>(mix64(seed, static_cast<std::uint64_t>(t), right)) &
        ((1u << wl) - 1);
    const std::uint32_t new_left = right;
    right = left ^ f;
    left = new_left;
    std::swap(wl, wr);
  }
  return (left << wr) | right;
}

std::uint32_t feistel_backward(std::uint64_t seed, int rounds, int n, std::uint32_t v) {
  if (n == 1) {
    return v ^ static_cast<std::uint32_t>(mix64(seed, 0) & 1u);
  }
  // Recover the width sequence the forward pass ended with.
  int wl = n / 2;
  int wr = n - wl;
  if (rounds % 2 != 0) {
    std::swap(wl, wr);
  }
  std::uint32_t left = v >> wr;
  std::uint32_t right = v & ((1u << wr) - 1);
  for (int t = rounds - 1; t >= 0; --t) {
    std::swap(wl, wr);
    const std::uint32_t prev_right = left;
    const std::uint32_t f =
        static_cast<std::uint32_t>(mix64(seed, static_cast<std::uint64_t>(t), prev_right)) &
        ((1u << wl) - 1);
    left = right ^ f;
    right = prev_right;
  }
  return (left << wr) | right;
}

void check_n(int n, int limit = 16) {
  if (n < 1 || n > limit) {
    throw std::invalid_argument("family bit length " + std::to_string(n) +
                                " outside supported range [1, " + std::to_string(limit) + "]");
  }
}

}  // namespace

struct FunctionFamily::Impl {
  FamilyKind kind;
  int n = 0;
  std::uint64_t seed = 0;
  int rounds = 0;
  std::vector<std::uint32_t> table;      // custom_table
  std::vector<FunctionFamily> subs;      // parallel_composition
};

namespace {

FunctionFamily make(std::shared_ptr<const FunctionFamily::Impl> impl) {
  return FunctionFamily(std::move(impl));
}

}  // namespace

FunctionFamily FunctionFamily::xor_family(int n) {
  check_n(n);
  auto impl = std::make_shared<Impl>();
  impl->kind = FamilyKind::xor_family;
  impl->n = n;
  return make(std::move(impl));
}

FunctionFamily FunctionFamily::truly_random(int n, std::uint64_t seed) {
  check_n(n);
  auto impl = std::make_shared<Impl>();
  impl->kind = FamilyKind::truly_random;
  impl->n = n;
  impl->seed = seed;
  return make(std::move(impl));
}

FunctionFamily FunctionFamily::feistel(int n, std::uint64_t seed, int rounds) {
  check_n(n);
  if (n % 2 != 0) {
    throw std::invalid_argument("feistel family requires even n, got " + std::to_string(n));
  }
  if (rounds < 3) {
    throw std::invalid_argument("feistel family requires rounds >= 3");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FamilyKind::feistel_prp;
  impl->n = n;
  impl->seed = seed;
  impl->rounds = rounds;
  return make(std::move(impl));
}

FunctionFamily FunctionFamily::ggm(int n, std::uint64_t seed, int rounds) {
  check_n(n);
  if (rounds < 3) {
    throw std::invalid_argument("ggm family requires rounds >= 3");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FamilyKind::ggm;
  impl->n = n;
  impl->seed = seed;
  impl->rounds = rounds;
  return make(std::move(impl));
}

FunctionFamily FunctionFamily::parallel(const FunctionFamily& f, const FunctionFamily& g) {
  if (f.n() != g.n()) {
    throw std::invalid_argument("parallel composition requires equal bit lengths");
  }
  check_n(2 * f.n());
  auto impl = std::make_shared<Impl>();
  impl->kind = FamilyKind::parallel_composition;
  impl->n = 2 * f.n();
  impl->subs = {f, g};
  return make(std::move(impl));
}

FunctionFamily FunctionFamily::custom_table(int n, std::vector<std::uint32_t> outputs) {
  check_n(n, 8);
  const std::size_t expect = std::size_t{1} << (2 * n);
  if (outputs.size() != expect) {
    throw std::invalid_argument("custom table must list 2^(2n) outputs");
  }
  for (std::uint32_t v : outputs) {
    if (v >> n) {
      throw std::invalid_argument("custom table output does not fit in n bits");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = FamilyKind::custom_table;
  impl->n = n;
  impl->table = std::move(outputs);
  return make(std::move(impl));
}

FamilyKind FunctionFamily::kind() const { return impl_->kind; }
int FunctionFamily::n() const { return impl_->n; }
std::uint64_t FunctionFamily::seed() const { return impl_->seed; }

BitString FunctionFamily::eval(const BitString& k, const BitString& x) const {
  const Impl& im = *impl_;
  if (k.n() != im.n || x.n() != im.n) {
    throw std::invalid_argument("family eval: key/input length must be " + std::to_string(im.n));
  }
  switch (im.kind) {
    case FamilyKind::xor_family:
      return k ^ x;
    case FamilyKind::truly_random: {
      const std::uint64_t v = mix64(im.seed, k.index(), x.index());
      return BitString(im.n, static_cast<std::uint32_t>(v & ((1u << im.n) - 1)));
    }
    case FamilyKind::feistel_prp: {
      const std::uint32_t v = feistel_forward(im.seed, im.rounds, im.n, (k ^ x).index());
      return BitString(im.n, v);
    }
    case FamilyKind::ggm: {
      // Walk the key through the permutation tree, last input bit first.
      const std::uint64_t seed0 = mix64(im.seed, 0xf0);
      const std::uint64_t seed1 = mix64(im.seed, 0xf1);
      std::uint32_t u = k.index();
      for (int i = im.n - 1; i >= 0; --i) {
        u = feistel_forward(x.bit(i) ? seed1 : seed0, im.rounds, im.n, u);
      }
      return BitString(im.n, u);
    }
    case FamilyKind::parallel_composition:
      return im.subs[0]
          .eval(k.high_half(), x.high_half())
          .concat(im.subs[1].eval(k.low_half(), x.low_half()));
    case FamilyKind::custom_table:
      return BitString(im.n, im.table[(static_cast<std::size_t>(k.index()) << im.n) | x.index()]);
  }
  throw std::logic_error("unreachable");
}

BitString FunctionFamily::invert(const BitString& k, const BitString& y) const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case FamilyKind::xor_family:
      return k ^ y;
    case FamilyKind::feistel_prp: {
      const std::uint32_t pre = feistel_backward(im.seed, im.rounds, im.n, y.index());
      return BitString(im.n, pre) ^ k;
    }
    default:
      throw std::invalid_argument("family kind " + kind_name(im.kind) +
                                  " has no structural input inverse");
  }
}

bool FunctionFamily::structurally_key_permutation() const {
  switch (impl_->kind) {
    case FamilyKind::xor_family:
    case FamilyKind::feistel_prp:
    case FamilyKind::ggm:
      return true;
    case FamilyKind::parallel_composition:
      return impl_->subs[0].structurally_key_permutation() &&
             impl_->subs[1].structurally_key_permutation();
    default:
      return false;
  }
}

nlohmann::json FunctionFamily::descriptor() const {
  const Impl& im = *impl_;
  nlohmann::json j{{"kind", kind_name(im.kind)}, {"n", im.n}};
  switch (im.kind) {
    case FamilyKind::truly_random:
      j["seed"] = im.seed;
      break;
    case FamilyKind::feistel_prp:
    case FamilyKind::ggm:
      j["seed"] = im.seed;
      j["rounds"] = im.rounds;
      break;
    case FamilyKind::parallel_composition:
      j["sub"] = {im.subs[0].descriptor(), im.subs[1].descriptor()};
      break;
    case FamilyKind::custom_table:
      j["table"] = im.table;
      break;
    case FamilyKind::xor_family:
      break;
  }
  return j;
}

FunctionFamily FunctionFamily::from_descriptor(const nlohmann::json& j) {
  const FamilyKind kind = kind_from_name(j.at("kind").get<std::string>());
  const int n = j.at("n").get<int>();
  switch (kind) {
    case FamilyKind::xor_family:
      return xor_family(n);
    case FamilyKind::truly_random:
      return truly_random(n, j.at("seed").get<std::uint64_t>());
    case FamilyKind::feistel_prp:
      return feistel(n, j.at("seed").get<std::uint64_t>(),
                     j.value("rounds", 4));
    case FamilyKind::ggm:
      return ggm(n, j.at("seed").get<std::uint64_t>(), j.value("rounds", 4));
    case FamilyKind::parallel_composition: {
      const auto& sub = j.at("sub");
      if (sub.size() != 2) {
        throw std::invalid_argument("parallel_composition descriptor needs two sub-descriptors");
      }
      return parallel(from_descriptor(sub[0]), from_descriptor(sub[1]));
    }
    case FamilyKind::custom_table:
      return custom_table(n, j.at("table").get<std::vector<std::uint32_t>>());
  }
  throw std::logic_error("unreachable");
}

KeyedPermutation::KeyedPermutation(FunctionFamily family, BitString key)
    : family_(std::move(family)), key_(key) {
  const int n = family_.n();
  if (key_.n() != n) {
    throw std::invalid_argument("keyed permutation: key length mismatch");
  }
  if (n > 16) {
    throw std::invalid_argument("keyed permutation: n too large to verify bijectivity");
  }
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    const std::uint32_t y = family_.eval(key_, BitString(n, x)).index();
    if (seen[y]) {
      throw std::invalid_argument("family is not a permutation of the input for this key");
    }
    seen[y] = true;
  }
}

BitString ggm_eval(const KeyedPermutation& g0, const KeyedPermutation& g1,
                   const BitString& k, const BitString& x) {
  if (g0.n() != k.n() || g1.n() != k.n() || x.n() != k.n()) {
    throw std::invalid_argument("ggm_eval: inconsistent bit lengths");
  }
  BitString u = k;
  for (int i = x.n() - 1; i >= 0; --i) {
    u = x.bit(i) ? g1.apply(u) : g0.apply(u);
  }
  return u;
}

bool is_key_permutation(const FunctionFamily& family, const BitString& x) {
  const int n = family.n();
  if (n > 16) {
    throw std::invalid_argument("is_key_permutation: key space too large to enumerate (n <= 16)");
  }
  std::vector<bool> seen(std::size_t{1} << n, false);
  for (std::uint32_t k = 0; k < (1u << n); ++k) {
    const std::uint32_t y = family.eval(BitString(n, k), x).index();
    if (seen[y]) {
      return false;
    }
    seen[y] = true;
  }
  return true;
}

PureState oracle_apply(const FunctionFamily& family, const BitString& k,
                       const PureState& state) {
  const int n = family.n();
  if (state.n() != 2 * n) {
    throw std::invalid_argument("oracle_apply: state must have 2n qubits");
  }
  std::vector<cd> out(state.dim(), cd{0.0, 0.0});
  const std::uint32_t mask = (1u << n) - 1;
  for (std::uint32_t idx = 0; idx < state.dim(); ++idx) {
    const std::uint32_t x = idx >> n;
    const std::uint32_t y = idx & mask;
    const std::uint32_t fy = family.eval(k, BitString(n, x)).index() ^ y;
    out[(x << n) | fy] = state.amplitude(idx);
  }
  return PureState::from_amplitudes(std::move(out));
}

FunctionFamily parallel_compose(const FunctionFamily& f, const FunctionFamily& g) {
  return FunctionFamily::parallel(f, g);
}

int XorOffsetStrategy::distinguish(Oracle& oracle, RandomSource&) const {
  const int n = oracle.n();
  const BitString x1 = BitString::zeros(n);
  const BitString x2 = BitString::zeros(n).with_bit(n - 1, 1);
  const BitString d1 = oracle.query(x1) ^ x1;
  const BitString d2 = oracle.query(x2) ^ x2;
  return d1 == d2 ? 1 : 0;
}

AdvantageEstimate estimate_advantage(const QueryStrategy& adversary,
                                     const FunctionFamily& family, long trials,
                                     std::uint64_t seed) {
  if (trials < 100) {
    throw std::invalid_argument("estimate_advantage: trials must be >= 100");
  }
  const int n = family.n();
  long ones_family = 0;
  long ones_random = 0;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t sub = mix64(seed, static_cast<std::uint64_t>(t));
    {
      SeededRandom keysrc(mix64(sub, 1));
      FamilyOracle oracle(family, keysrc.next_bits(n));
      SeededRandom coins(mix64(sub, 2));
      ones_family += adversary.distinguish(oracle, coins);
    }
    {
      const FunctionFamily fresh = FunctionFamily::truly_random(n, mix64(sub, 3));
      FamilyOracle oracle(fresh, BitString::zeros(n));
      SeededRandom coins(mix64(sub, 4));
      ones_random += adversary.distinguish(oracle, coins);
    }
  }
  AdvantageEstimate est;
  est.trials = trials;
  est.p_family = static_cast<double>(ones_family) / static_cast<double>(trials);
  est.p_random = static_cast<double>(ones_random) / static_cast<double>(trials);
  est.advantage = std::abs(est.p_family - est.p_random);
  const double t = static_cast<double>(trials);
  est.half_width = 1.96 * std::sqrt(est.p_family * (1.0 - est.p_family) / t +
                                    est.p_random * (1.0 - est.p_random) / t);
  return est;
}

namespace {

// Wilson-Hilferty chi-square quantile.
double chi2_quantile(double dof, double z) {
  const double a = 2.0 / (9.0 * dof);
  const double b = 1.0 - a + z * std::sqrt(a);
  return dof * b * b * b;
}

}  // namespace

nlohmann::json PairwiseReport::to_json() const {
  return {{"n", n},
          {"trials", trials},
          {"dof", dof},
          {"band_low", band_low},
          {"band_high", band_high},
          {"chi2_same_input", chi2_same_input},
          {"chi2_independent_input", chi2_independent_input},
          {"same_input_in_band", same_input_in_band},
          {"independent_input_in_band", independent_input_in_band},
          {"distinct_same_input_xors", distinct_same_input_xors}};
}

PairwiseReport pairwise_independence_test(const FunctionFamily& family,
                                          long trials, std::uint64_t seed) {
  const int n = family.n();
  if (n > 8) {
    throw std::invalid_argument("pairwise_independence_test: n <= 8 required");
  }
  if (trials < 100) {
    throw std::invalid_argument("pairwise_independence_test: trials must be >= 100");
  }
  SeededRandom rng(seed);

  // Chi-square regimes resample (k1, k2) every trial: the paired-output
  // distribution includes the key draw, and only then is the uniform band
  // a valid yardstick at toy sizes. The collision statistic uses one
  // fixed key pair across all queries, which is where a deterministic
  // F_k1(x) ^ F_k2(x) shows up.
  const BitString fixed_k1 = rng.next_bits(n);
  const BitString fixed_k2 = rng.next_bits(n);

  const std::size_t bins = std::size_t{1} << (2 * n);
  std::vector<long> same(bins, 0), indep(bins, 0);
  std::vector<bool> xor_seen(std::size_t{1} << n, false);
  long distinct_xors = 0;

  for (long t = 0; t < trials; ++t) {
    const BitString k1 = rng.next_bits(n);
    const BitString k2 = rng.next_bits(n);
    const BitString x = rng.next_bits(n);
    const BitString y1 = family.eval(k1, x);
    const BitString y2 = family.eval(k2, x);
    ++same[(static_cast<std::size_t>(y1.index()) << n) | y2.index()];

    const BitString xa = rng.next_bits(n);
    const BitString xb = rng.next_bits(n);
    const BitString z1 = family.eval(k1, xa);
    const BitString z2 = family.eval(k2, xb);
    ++indep[(static_cast<std::size_t>(z1.index()) << n) | z2.index()];

    const BitString xq = rng.next_bits(n);
    const std::uint32_t d =
        (family.eval(fixed_k1, xq) ^ family.eval(fixed_k2, xq)).index();
    if (!xor_seen[d]) {
      xor_seen[d] = true;
      ++distinct_xors;
    }
  }

  const double expect = static_cast<double>(trials) / static_cast<double>(bins);
  auto chi2 = [&](const std::vector<long>& hist) {
    double s = 0.0;
    for (long o : hist) {
      const double d = static_cast<double>(o) - expect;
      s += d * d / expect;
    }
    return s;
  };

  PairwiseReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.dof = static_cast<double>(bins) - 1.0;
  rep.band_low = chi2_quantile(rep.dof, -2.5758);
  rep.band_high = chi2_quantile(rep.dof, 2.5758);
  rep.chi2_same_input = chi2(same);
  rep.chi2_independent_input = chi2(indep);
  rep.same_input_in_band =
      rep.chi2_same_input >= rep.band_low && rep.chi2_same_input <= rep.band_high;
  rep.independent_input_in_band = rep.chi2_independent_input >= rep.band_low &&
                                  rep.chi2_independent_input <= rep.band_high;
  rep.distinct_same_input_xors = distinct_xors;
  return rep;
}

}  // namespace qbe::prf
