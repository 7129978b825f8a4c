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

// Reproducibility front door: every experiment runs from an explicit seed
// and emits a JSON report (one-line verdict + JSON on stdout, optionally a
// file via --output, or an aligned summary via --table). Exit status is 0
// exactly when the report's verdict confirms the claimed behavior.

#include <bit>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbe/kernels.hpp"
#include "qbe/lab.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;
using namespace qbe;
using prf::FunctionFamily;
using scheme::SchemeDescriptor;
using scheme::Variant;

struct OutputOptions {
  std::string output_path;
  bool table = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--output", out.output_path, "Write the JSON report to this path");
  cmd->add_flag("--table", out.table, "Render an aligned text summary instead of JSON");
}

void render_table(const json& report, std::ostream& os) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto add_scalar = [&](const std::string& key, const json& v) {
    if (v.is_structured()) return;
    rows.emplace_back(key, v.is_string() ? v.get<std::string>() : v.dump());
  };
  for (const auto& [key, value] : report.items()) {
    if (key == "config") continue;
    add_scalar(key, value);
  }
  if (report.contains("report")) {
    for (const auto& [key, value] : report.at("report").items()) {
      add_scalar(key, value);
      if (key == "details" && value.is_object()) {
        for (const auto& [dk, dv] : value.items()) {
          add_scalar("details." + dk, dv);
        }
      }
    }
  }
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) {
    os << "  " << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  }
}

// Every report carries the artifact version and the full config echo.
int emit(const std::string& command, const json& config, const json& body,
         const std::string& verdict_line, bool confirms, const OutputOptions& out) {
  json report;
  report["artifact_version"] = kVersion;
  report["command"] = command;
  report["config"] = config;
  report.update(body);

  std::cout << verdict_line << "\n";
  if (out.table) {
    render_table(report, std::cout);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  if (!out.output_path.empty()) {
    std::ofstream f(out.output_path);
    if (!f) {
      std::cerr << "error: cannot write " << out.output_path << "\n";
      return 2;
    }
    f << report.dump(2) << "\n";
  }
  return confirms ? 0 : 1;
}

int emit_attack(const std::string& command, const json& config, const lab::AttackReport& rep,
                const OutputOptions& out) {
  std::ostringstream line;
  line << command << ": " << lab::verdict_name(rep.verdict);
  if (rep.success_probability) line << "  success=" << *rep.success_probability;
  if (rep.trace_distance) line << "  trace_distance=" << *rep.trace_distance;
  if (rep.paper_bound) line << "  bound=" << *rep.paper_bound;
  return emit(command, config, {{"report", rep.to_json()}}, line.str(), rep.confirms(), out);
}

// Family selectors: a built-in name (xor | feistel | ggm | random) derives
// the instance from --seed; anything else is a path to a descriptor file.
FunctionFamily make_family(const std::string& name, int n, std::uint64_t seed) {
  if (name == "xor") return FunctionFamily::xor_family(n);
  if (name == "random") return FunctionFamily::truly_random(n, seed);
  if (name == "feistel") return FunctionFamily::feistel(n, seed);
  if (name == "ggm") return FunctionFamily::ggm(n, seed);
  std::ifstream f(name);
  if (!f) {
    throw std::invalid_argument("family '" + name +
                                "' is neither a built-in name (xor|feistel|ggm|random) nor a readable file");
  }
  json j;
  f >> j;
  const FunctionFamily fam = FunctionFamily::from_descriptor(j);
  if (fam.n() != n) {
    throw std::invalid_argument("family descriptor has n=" + std::to_string(fam.n()) +
                                " but the run asked for n=" + std::to_string(n));
  }
  return fam;
}

// A pair file is either {"F": desc, "G": desc} or a single descriptor
// (the G instance then reuses it with the seed advanced by one).
std::pair<FunctionFamily, FunctionFamily> make_family_pair(const std::string& name, int n,
                                                           std::uint64_t seed) {
  if (name == "xor" || name == "feistel" || name == "ggm" || name == "random") {
    return {make_family(name, n, seed), make_family(name, n, seed + 1)};
  }
  std::ifstream f(name);
  if (!f) {
    throw std::invalid_argument("cannot read family file: " + name);
  }
  json j;
  f >> j;
  if (j.contains("F") && j.contains("G")) {
    FunctionFamily F = FunctionFamily::from_descriptor(j.at("F"));
    FunctionFamily G = FunctionFamily::from_descriptor(j.at("G"));
    if (F.n() != n || G.n() != n) {
      throw std::invalid_argument("family pair does not match n=" + std::to_string(n));
    }
    return {F, G};
  }
  FunctionFamily F = FunctionFamily::from_descriptor(j);
  if (F.n() != n) {
    throw std::invalid_argument("family descriptor does not match n=" + std::to_string(n));
  }
  json j2 = j;
  if (j2.contains("seed")) {
    j2["seed"] = j2.at("seed").get<std::uint64_t>() + 1;
  }
  return {F, FunctionFamily::from_descriptor(j2)};
}

// ---- verify identities ----

int run_identities(int n, std::uint64_t seed, const OutputOptions& out) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("identities run exhaustively; n must be in [1, 3]");
  }
  const std::uint32_t dim = 1u << n;

  auto mat_mul = [dim](const std::vector<cd>& a, const std::vector<cd>& b) {
    std::vector<cd> c(a.size(), cd{0.0, 0.0});
    for (std::uint32_t i = 0; i < dim; ++i)
      for (std::uint32_t k = 0; k < dim; ++k) {
        const cd v = a[i * dim + k];
        if (v == cd{0.0, 0.0}) continue;
        for (std::uint32_t j = 0; j < dim; ++j) c[i * dim + j] += v * b[k * dim + j];
      }
    return c;
  };
  auto max_dev = [](const std::vector<cd>& a, const std::vector<cd>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
  };

  // Commutation sign: Z^b X^a vs sign * X^a Z^b.
  double commute_dev = 0.0;
  for (std::uint32_t b = 0; b < dim; ++b) {
    for (std::uint32_t a = 0; a < dim; ++a) {
      const BitString bb(n, b), ab(n, a);
      const auto zx = mat_mul(pauli_dense(PauliOp::z_mask_op(bb)),
                              pauli_dense(PauliOp::x_mask_op(ab)));
      auto xz = mat_mul(pauli_dense(PauliOp::x_mask_op(ab)),
                        pauli_dense(PauliOp::z_mask_op(bb)));
      const double sign = commute_z_past_x(bb, ab);
      for (cd& v : xz) v *= sign;
      commute_dev = std::max(commute_dev, max_dev(zx, xz));
    }
  }

  // Hadamard conjugation: dense(H P H) via hadamard_all-style dense H.
  std::vector<cd> hmat(dim * dim);
  {
    const double scale = std::pow(2.0, -0.5 * n);
    for (std::uint32_t i = 0; i < dim; ++i)
      for (std::uint32_t j = 0; j < dim; ++j)
        hmat[i * dim + j] = (std::popcount(i & j) & 1) ? -scale : scale;
  }
  double hconj_dev = 0.0;
  for (std::uint32_t a = 0; a < dim; ++a) {
    for (std::uint32_t b = 0; b < dim; ++b) {
      const PauliOp p(BitString(n, a), BitString(n, b));
      const PauliOp q = conjugate_pauli_by_h(p);
      const auto lhs = mat_mul(hmat, mat_mul(pauli_dense(p), hmat));
      hconj_dev = std::max(hconj_dev, max_dev(lhs, pauli_dense(q)));
    }
  }

  // Product phases against dense products (exhaustive over mask pairs).
  double product_dev = 0.0;
  for (std::uint32_t a1 = 0; a1 < dim; ++a1)
    for (std::uint32_t b1 = 0; b1 < dim; ++b1)
      for (std::uint32_t a2 = 0; a2 < dim; ++a2)
        for (std::uint32_t b2 = 0; b2 < dim; ++b2) {
          const PauliOp p(BitString(n, a1), BitString(n, b1));
          const PauliOp q(BitString(n, a2), BitString(n, b2));
          product_dev = std::max(
              product_dev, max_dev(mat_mul(pauli_dense(p), pauli_dense(q)),
                                   pauli_dense(p * q)));
        }

  // Decompose/reconstruct on seeded random states.
  SeededRandom rng(seed);
  double recon_dev = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix s = random_density_matrix(n, rng);
    recon_dev = std::max(recon_dev,
                         pauli_reconstruct(pauli_decompose(s)).max_abs_diff(s));
  }

  // Bijection sign sums collapse to the delta function.
  double delta_dev = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<std::uint32_t> pi(dim);
    for (std::uint32_t i = 0; i < dim; ++i) pi[i] = i;
    for (std::size_t i = dim - 1; i > 0; --i) {
      std::swap(pi[i], pi[rng.next_below(i + 1)]);
    }
    for (std::uint32_t beta = 0; beta < dim; ++beta) {
      double acc = 0.0;
      for (std::uint32_t k = 0; k < dim; ++k) {
        acc += BitString(n, beta).dot(BitString(n, pi[k])) ? -1.0 : 1.0;
      }
      acc /= static_cast<double>(dim);
      delta_dev = std::max(delta_dev, std::abs(acc - (beta == 0 ? 1.0 : 0.0)));
    }
  }

  const bool ok = commute_dev < kTolAlg && hconj_dev < kTolAlg && product_dev < kTolAlg &&
                  recon_dev < kTolEq && delta_dev < kTolAlg;
  const json body = {{"report",
                      {{"experiment", "identities"},
                       {"n", n},
                       {"verdict", ok ? "confirms_paper" : "violates_paper"},
                       {"details",
                        {{"commutation_max_deviation", commute_dev},
                         {"hadamard_conjugation_max_deviation", hconj_dev},
                         {"product_phase_max_deviation", product_dev},
                         {"decompose_reconstruct_max_deviation", recon_dev},
                         {"bijection_delta_max_deviation", delta_dev},
                         {"algebra_tolerance", kTolAlg},
                         {"reconstruction_tolerance", kTolEq}}}}}};
  const json config = {{"n", n}, {"seed", seed}};
  std::ostringstream line;
  line << "verify identities: " << (ok ? "confirms_paper" : "violates_paper")
       << "  max_algebra_dev=" << std::max({commute_dev, hconj_dev, product_dev});
  return emit("verify identities", config, body, line.str(), ok, out);
}

// ---- verify roundtrip ----

int run_roundtrip(int n, std::uint64_t seed, int plaintexts, const OutputOptions& out) {
  if (n < 1 || n > 4) {
    throw std::invalid_argument("roundtrip suite covers n in [1, 4]");
  }
  SeededRandom rng(seed);
  json per_variant = json::object();
  bool all_ok = true;
  for (Variant v : scheme::all_variants()) {
    SchemeDescriptor desc;
    desc.variant = v;
    desc.n = n;
    if (v != Variant::qotp && v != Variant::xczc) {
      desc.F = FunctionFamily::ggm(n, seed + 100);
      desc.G = FunctionFamily::ggm(n, seed + 101);
    }
    double max_dev = 0.0;
    bool exact_ok = true;
    for (int i = 0; i < plaintexts; ++i) {
      const scheme::KeyPair keys = scheme::keygen(n, rng);
      if (scheme::variant_is_classical(v)) {
        const BitString m = rng.next_bits(n);
        const auto ct = scheme_encrypt(desc, keys, m, rng);
        exact_ok = exact_ok && std::get<BitString>(scheme_decrypt(desc, keys, ct)) == m;
      } else {
        const DensityMatrix s = random_density_matrix(n, rng);
        const auto ct = scheme_encrypt(desc, keys, s, rng);
        max_dev = std::max(
            max_dev, std::get<DensityMatrix>(scheme_decrypt(desc, keys, ct)).max_abs_diff(s));
      }
    }
    const bool ok = exact_ok && max_dev < kTolAlg;
    all_ok = all_ok && ok;
    per_variant[scheme::variant_name(v)] = {{"max_deviation", max_dev}, {"ok", ok}};
  }
  const json body = {{"report",
                      {{"experiment", "roundtrip"},
                       {"n", n},
                       {"verdict", all_ok ? "confirms_paper" : "violates_paper"},
                       {"details",
                        {{"plaintexts_per_variant", plaintexts},
                         {"tolerance", kTolAlg},
                         {"variants", per_variant}}}}}};
  const json config = {{"n", n}, {"seed", seed}, {"plaintexts", plaintexts}};
  std::ostringstream line;
  line << "verify roundtrip: " << (all_ok ? "confirms_paper" : "violates_paper")
       << "  variants=" << scheme::all_variants().size();
  return emit("verify roundtrip", config, body, line.str(), all_ok, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block encryption of quantum states: exact small-block security experiments"};
  app.require_subcommand(1);

  std::string kernels_backend = "auto";
  app.add_option("--kernels", kernels_backend,
                 "Kernel backend: auto, scalar"
#if defined(__x86_64__) || defined(_M_X64)
                 ", avx2"
#endif
                 )
      ->capture_default_str();

  // Common knobs; each subcommand binds the ones it uses.
  int n = 1;
  std::uint64_t seed = 1;
  int trials = 1000;
  int plaintexts = 20;
  int randomness_pairs = 3;
  int blocks = 2;
  std::string family = "ggm";
  std::string strategy = "xor_offset";
  std::string layer = "prf";
  std::string message;
  bool random_blocks = false;
  OutputOptions out;

  auto* verify = app.add_subcommand("verify", "Exact verification runs");
  auto* v_id = verify->add_subcommand("identities", "Operator algebra identities");
  v_id->add_option("--n", n, "Qubit count (1..3)")->capture_default_str();
  v_id->add_option("--seed", seed)->capture_default_str();
  add_output_options(v_id, out);

  auto* v_rt = verify->add_subcommand("roundtrip", "Dec(Enc(s)) = s for every scheme variant");
  v_rt->add_option("--n", n, "Block size (1..4)")->capture_default_str();
  v_rt->add_option("--seed", seed)->capture_default_str();
  int rt_plaintexts = 50;
  v_rt->add_option("--plaintexts", rt_plaintexts)->capture_default_str();
  add_output_options(v_rt, out);

  auto* v_ps = verify->add_subcommand(
      "perfect-security", "Exact key-average distance from the maximally mixed state");
  v_ps->add_option("--n", n, "Block size (1..4)")->capture_default_str();
  v_ps->add_option("--seed", seed)->capture_default_str();
  v_ps->add_option("--families", family,
                   "Family pair: built-in name or descriptor file")->capture_default_str();
  v_ps->add_option("--plaintexts", plaintexts)->capture_default_str();
  v_ps->add_option("--randomness", randomness_pairs, "Fixed randomness pairs to test")
      ->capture_default_str();
  add_output_options(v_ps, out);

  auto* attack = app.add_subcommand("attack", "Distinguishing experiments");
  auto* a_p1 = attack->add_subcommand("prop1", "Correlated-mask scheme distinguisher");
  a_p1->add_option("--n", n, "Qubit count (1..6)")->capture_default_str();
  add_output_options(a_p1, out);

  auto* a_t4 = attack->add_subcommand("thm4", "Conjugate-basis attack on the single-layer scheme");
  a_t4->add_option("--n", n, "Block size (1..8)")->capture_default_str();
  a_t4->add_option("--seed", seed)->capture_default_str();
  a_t4->add_option("--family", family)->capture_default_str();
  a_t4->add_option("--layer", layer, "Classical layer: prf (xor) or modadd")
      ->check(CLI::IsMember({"prf", "modadd"}))
      ->capture_default_str();
  add_output_options(a_t4, out);

  auto* a_ru = attack->add_subcommand("reuse", "Randomness-reuse attack");
  a_ru->add_option("--n", n, "Block size (1..3)")->capture_default_str();
  a_ru->add_option("--seed", seed)->capture_default_str();
  a_ru->add_option("--families", family)->capture_default_str();
  add_output_options(a_ru, out);

  auto* analyze = app.add_subcommand("analyze", "Exact structural analyses");
  auto* an_mm = analyze->add_subcommand("multi-message", "Joint vs per-block key averages");
  an_mm->add_option("--n", n, "Block size")->capture_default_str();
  an_mm->add_option("--blocks", blocks, "Block count (blocks*n <= 6)")->capture_default_str();
  an_mm->add_option("--seed", seed)->capture_default_str();
  an_mm->add_option("--families", family)->capture_default_str();
  an_mm->add_flag("--random-blocks", random_blocks, "Random pure blocks instead of |0...0>");
  add_output_options(an_mm, out);

  auto* prfc = app.add_subcommand("prf", "Function-family diagnostics");
  auto* p_adv = prfc->add_subcommand("advantage", "Empirical distinguishing advantage");
  p_adv->add_option("--n", n, "Bit length")->capture_default_str();
  p_adv->add_option("--family", family)->capture_default_str();
  p_adv->add_option("--trials", trials)->capture_default_str();
  p_adv->add_option("--seed", seed)->capture_default_str();
  p_adv->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"xor_offset", "always_one"}))
      ->capture_default_str();
  add_output_options(p_adv, out);

  auto* p_pc = prfc->add_subcommand("permutation-check", "k -> F(k,x) bijective for every x");
  p_pc->add_option("--n", n, "Bit length (1..8 exhaustive)")->capture_default_str();
  p_pc->add_option("--family", family)->capture_default_str();
  p_pc->add_option("--seed", seed)->capture_default_str();
  add_output_options(p_pc, out);

  auto* enc = app.add_subcommand("encrypt-classical",
                                 "Encrypt a classical message into conjugate-basis qubits");
  enc->add_option("--n", n, "Block size")->capture_default_str();
  enc->add_option("--seed", seed)->capture_default_str();
  enc->add_option("--message", message, "Bit string of length n (default: seeded random)");
  enc->add_option("--families", family)->capture_default_str();
  add_output_options(enc, out);

  CLI11_PARSE(app, argc, argv);

  try {
    kern::set_active(kernels_backend);

    if (v_id->parsed()) {
      return run_identities(n, seed, out);
    }
    if (v_rt->parsed()) {
      return run_roundtrip(n, seed, rt_plaintexts, out);
    }
    if (v_ps->parsed()) {
      auto [F, G] = make_family_pair(family, n, seed + 10);
      SeededRandom rng(seed);
      std::vector<DensityMatrix> pts;
      for (int i = 0; i < plaintexts; ++i) {
        pts.push_back(random_density_matrix(n, rng));
      }
      const auto rep = lab::verify_perfect_security(F, G, pts, seed, randomness_pairs);
      const json config = {{"n", n},
                           {"seed", seed},
                           {"plaintexts", plaintexts},
                           {"randomness", randomness_pairs},
                           {"F", F.descriptor()},
                           {"G", G.descriptor()}};
      return emit_attack("verify perfect-security", config, rep, out);
    }
    if (a_p1->parsed()) {
      const auto rep = lab::prop1_attack(n);
      return emit_attack("attack prop1", {{"n", n}}, rep, out);
    }
    if (a_t4->parsed()) {
      const FunctionFamily F = make_family(family, n, seed + 10);
      const auto rep = layer == "modadd"
                           ? lab::thm4_attack_classical(lab::modadd_prf_cipher(F), n, seed)
                           : lab::thm4_attack(F, n, seed);
      const json config = {
          {"n", n}, {"seed", seed}, {"layer", layer}, {"family", F.descriptor()}};
      return emit_attack("attack thm4", config, rep, out);
    }
    if (a_ru->parsed()) {
      auto [F, G] = make_family_pair(family, n, seed + 10);
      const auto rep = lab::reuse_attack(F, G, n, seed);
      const json config = {
          {"n", n}, {"seed", seed}, {"F", F.descriptor()}, {"G", G.descriptor()}};
      return emit_attack("attack reuse", config, rep, out);
    }
    if (an_mm->parsed()) {
      auto [F, G] = make_family_pair(family, n, seed + 10);
      SeededRandom rng(seed + 5);
      std::vector<DensityMatrix> bs;
      for (int i = 0; i < blocks; ++i) {
        bs.push_back(random_blocks ? random_pure_state(n, rng).density()
                                   : PureState::basis(n, 0).density());
      }
      const auto rep = lab::multi_message_analysis(F, G, blocks, n, bs, seed);
      const json config = {{"n", n},
                           {"blocks", blocks},
                           {"seed", seed},
                           {"random_blocks", random_blocks},
                           {"F", F.descriptor()},
                           {"G", G.descriptor()}};
      return emit_attack("analyze multi-message", config, rep, out);
    }
    if (p_adv->parsed()) {
      const FunctionFamily F = make_family(family, n, seed + 10);
      const prf::XorOffsetStrategy xor_offset;
      const prf::AlwaysOneStrategy always_one;
      const prf::QueryStrategy& strat =
          strategy == "always_one" ? static_cast<const prf::QueryStrategy&>(always_one)
                                   : xor_offset;
      const auto est = prf::estimate_advantage(strat, F, trials, seed);
      const json config = {{"n", n},
                           {"seed", seed},
                           {"trials", trials},
                           {"strategy", strategy},
                           {"family", F.descriptor()}};
      const json body = {{"report",
                          {{"experiment", "prf_advantage"},
                           {"n", n},
                           {"details",
                            {{"advantage", est.advantage},
                             {"half_width", est.half_width},
                             {"accept_rate_family", est.p_family},
                             {"accept_rate_random", est.p_random},
                             {"trials", est.trials}}}}}};
      std::ostringstream line;
      line << "prf advantage: estimate=" << est.advantage << " +-" << est.half_width;
      return emit("prf advantage", config, body, line.str(), true, out);
    }
    if (p_pc->parsed()) {
      if (n > 8) {
        throw std::invalid_argument("permutation-check enumerates exhaustively; n <= 8");
      }
      const FunctionFamily F = make_family(family, n, seed + 10);
      int failures = 0;
      std::string first_counterexample;
      for (std::uint32_t x = 0; x < (1u << n); ++x) {
        if (!prf::is_key_permutation(F, BitString(n, x))) {
          if (failures == 0) first_counterexample = BitString(n, x).str();
          ++failures;
        }
      }
      const bool ok = failures == 0;
      json details = {{"inputs_checked", 1u << n},
                      {"failures", failures},
                      {"structural", F.structurally_key_permutation()}};
      if (!ok) details["first_counterexample_x"] = first_counterexample;
      const json body = {{"report",
                          {{"experiment", "permutation_check"},
                           {"n", n},
                           {"verdict", ok ? "confirms_paper" : "violates_paper"},
                           {"details", details}}}};
      const json config = {{"n", n}, {"seed", seed}, {"family", F.descriptor()}};
      std::ostringstream line;
      line << "prf permutation-check: " << (ok ? "confirms_paper" : "violates_paper")
           << "  failures=" << failures;
      return emit("prf permutation-check", config, body, line.str(), ok, out);
    }
    if (enc->parsed()) {
      auto [F, G] = make_family_pair(family, n, seed + 10);
      SeededRandom rng(seed);
      const scheme::KeyPair keys = scheme::keygen(n, rng);
      const BitString m = message.empty() ? rng.next_bits(n) : BitString::parse(message);
      if (m.n() != n) {
        throw std::invalid_argument("--message must have exactly n bits");
      }
      const scheme::Ciphertext ct = scheme::classical_bb84_enc(F, G, keys, m, rng);
      const BitString back = scheme::classical_bb84_dec(F, G, keys, ct);
      const bool ok = back == m;
      const json body = {{"report",
                          {{"experiment", "encrypt_classical"},
                           {"n", n},
                           {"verdict", ok ? "confirms_paper" : "violates_paper"},
                           {"details",
                            {{"message", m.str()},
                             {"decrypted", back.str()},
                             {"ciphertext", ct.to_json()}}}}}};
      const json config = {
          {"n", n}, {"seed", seed}, {"F", F.descriptor()}, {"G", G.descriptor()}};
      std::ostringstream line;
      line << "encrypt-classical: " << (ok ? "roundtrip ok" : "ROUNDTRIP FAILED")
           << "  message=" << m.str();
      return emit("encrypt-classical", config, body, line.str(), ok, out);
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
