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

#include "qbe/density.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qbe/kernels.hpp"
#include "qbe/rng.hpp"

namespace qbe {
namespace {

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) +
                                " outside supported range [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

void check_same_n(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n() != b.n()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.n()) +
                                " vs " + std::to_string(b.n()) + " qubits");
  }
}

int parity(std::uint32_t v) { return std::popcount(v) & 1; }

Eigen::MatrixXcd to_eigen(const DensityMatrix& s) {
  const auto d = static_cast<Eigen::Index>(s.dim());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = s.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return m;
}

}  // namespace

DensityMatrix::DensityMatrix(int n)
    : n_(n), dim_(std::size_t{1} << n), a_(dim_ * dim_, cd{0.0, 0.0}) {
  check_qubits(n);
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  DensityMatrix s(n);
  const double p = 1.0 / static_cast<double>(s.dim_);
  for (std::size_t i = 0; i < s.dim_; ++i) {
    s.at(i, i) = p;
  }
  return s;
}

cd DensityMatrix::trace() const {
  cd t{0.0, 0.0};
  for (std::size_t i = 0; i < dim_; ++i) {
    t += at(i, i);
  }
  return t;
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
  check_same_n(*this, other);
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    m = std::max(m, std::abs(a_[i] - other.a_[i]));
  }
  return m;
}

bool DensityMatrix::is_valid_state(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) {
        return false;
      }
    }
  }
  if (std::abs(trace() - cd{1.0, 0.0}) > tol) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(*this),
                                                         Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

void DensityMatrix::require_valid(double tol) const {
  if (!is_valid_state(tol)) {
    throw std::invalid_argument("invalid density matrix (hermiticity, trace or positivity violated)");
  }
}

void DensityMatrix::accumulate(const DensityMatrix& other, double weight) {
  check_same_n(*this, other);
  kern::active().axpy(a_.data(), weight, other.a_.data(), a_.size());
}

void DensityMatrix::scale(double s) {
  kern::active().scale(a_.data(), s, a_.size());
}

nlohmann::json DensityMatrix::to_json() const {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < dim_; ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (std::size_t j = 0; j < dim_; ++j) {
      re_row.push_back(at(i, j).real());
      im_row.push_back(at(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"n", n_}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix DensityMatrix::from_json(const nlohmann::json& j) {
  DensityMatrix s(j.at("n").get<int>());
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != s.dim() || im.size() != s.dim()) {
    throw std::invalid_argument("matrix json: row count does not match n");
  }
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (re[i].size() != s.dim() || im[i].size() != s.dim()) {
      throw std::invalid_argument("matrix json: column count does not match n");
    }
    for (std::size_t k = 0; k < s.dim(); ++k) {
      s.at(i, k) = cd{re[i][k].get<double>(), im[i][k].get<double>()};
    }
  }
  return s;
}

PureState::PureState(int n) : n_(n), amps_(std::size_t{1} << n, cd{0.0, 0.0}) {
  if (n < 1 || n > 2 * kMaxQubits) {
    throw std::invalid_argument("pure state qubit count out of range");
  }
  amps_[0] = cd{1.0, 0.0};
}

PureState PureState::basis(const BitString& b) {
  PureState s(b.n());
  s.amps_[0] = cd{0.0, 0.0};
  s.amps_[b.index()] = cd{1.0, 0.0};
  return s;
}

PureState PureState::basis(int n, std::uint32_t index) {
  return basis(BitString(n, index));
}

PureState PureState::from_amplitudes(std::vector<cd> amps) {
  if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  const int n = std::countr_zero(amps.size());
  PureState s(n);
  s.amps_ = std::move(amps);
  return s;
}

PureState PureState::uniform_plus(int n) {
  PureState s(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  std::fill(s.amps_.begin(), s.amps_.end(), cd{a, 0.0});
  return s;
}

PureState PureState::half_turn(cd phase) {
  const double r = 1.0 / std::sqrt(2.0);
  return from_amplitudes({cd{r, 0.0}, phase * r});
}

double PureState::norm() const {
  double s = 0.0;
  for (const cd& a : amps_) {
    s += std::norm(a);
  }
  return std::sqrt(s);
}

void PureState::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  for (cd& a : amps_) {
    a /= nrm;
  }
}

cd PureState::inner(const PureState& other) const {
  if (n_ != other.n_) {
    throw std::invalid_argument("pure state dimension mismatch");
  }
  cd s{0.0, 0.0};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    s += std::conj(amps_[i]) * other.amps_[i];
  }
  return s;
}

PureState PureState::tensor(const PureState& other) const {
  std::vector<cd> out(amps_.size() * other.amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    kern::active().scaled_copy(out.data() + i * other.amps_.size(), amps_[i],
                               other.amps_.data(), other.amps_.size());
  }
  return from_amplitudes(std::move(out));
}

DensityMatrix PureState::density() const {
  if (n_ > kMaxQubits) {
    throw std::invalid_argument("state too large for a dense density matrix");
  }
  DensityMatrix s(n_);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    for (std::size_t j = 0; j < amps_.size(); ++j) {
      s.at(i, j) = amps_[i] * std::conj(amps_[j]);
    }
  }
  return s;
}

DensityMatrix pauli_apply(const PauliOp& p, const DensityMatrix& s) {
  if (p.n() != s.n()) {
    throw std::invalid_argument("dimension mismatch: operator on " + std::to_string(p.n()) +
                                " qubits, state on " + std::to_string(s.n()));
  }
  const std::size_t dim = s.dim();
  const std::uint32_t a = p.x_mask().index();
  const std::uint32_t b = p.z_mask().index();

  // (P s P+)[i][j] = (-1)^{b.i} (-1)^{b.j} s[i^a][j^a]; the quarter phase
  // and the (-1)^{b.a} factors cancel between P and P+.
  DensityMatrix out(s.n());
  for (std::size_t i = 0; i < dim; ++i) {
    const cd* src = s.row(i ^ a);
    cd* dst = out.row(i);
    for (std::size_t j = 0; j < dim; ++j) {
      dst[j] = src[j ^ a];
    }
  }
  if (b != 0) {
    std::vector<double> col_signs(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      col_signs[j] = parity(static_cast<std::uint32_t>(j) & b) ? -1.0 : 1.0;
    }
    const auto& k = kern::active();
    for (std::size_t i = 0; i < dim; ++i) {
      k.apply_signs(out.row(i), col_signs.data(), dim);
      if (col_signs[i] < 0.0) {
        k.scale(out.row(i), -1.0, dim);
      }
    }
  }
  return out;
}

DensityMatrix hadamard_all(const DensityMatrix& s) {
  const std::size_t dim = s.dim();
  DensityMatrix out = s;
  const auto& k = kern::active();

  // Unnormalized fast Walsh-Hadamard over the column index of each row...
  for (std::size_t r = 0; r < dim; ++r) {
    cd* row = out.row(r);
    for (std::size_t h = 1; h < dim; h <<= 1) {
      for (std::size_t blk = 0; blk < dim; blk += 2 * h) {
        k.butterfly(row + blk, row + blk + h, h);
      }
    }
  }
  // ...then over the row index (whole rows pair up contiguously)...
  for (std::size_t h = 1; h < dim; h <<= 1) {
    for (std::size_t blk = 0; blk < dim; blk += 2 * h) {
      for (std::size_t off = 0; off < h; ++off) {
        k.butterfly(out.row(blk + off), out.row(blk + h + off), dim);
      }
    }
  }
  // ...and one global 1/2^n from the two normalization factors.
  out.scale(1.0 / static_cast<double>(dim));
  return out;
}

PauliCoefficients pauli_decompose(const DensityMatrix& s) {
  const int n = s.n();
  const std::size_t dim = s.dim();
  PauliCoefficients coeffs;
  coeffs.n = n;
  coeffs.c.assign(dim * dim, cd{0.0, 0.0});

  // a_{alpha,beta} = 2^-n tr(s Z^beta X^alpha)
  //               = 2^-n sum_j s[j][j^alpha] (-1)^{beta.(j^alpha)}
  const double inv = 1.0 / static_cast<double>(dim);
  for (std::uint32_t alpha = 0; alpha < dim; ++alpha) {
    for (std::uint32_t beta = 0; beta < dim; ++beta) {
      cd acc{0.0, 0.0};
      for (std::uint32_t j = 0; j < dim; ++j) {
        const cd v = s.at(j, j ^ alpha);
        acc += parity((j ^ alpha) & beta) ? -v : v;
      }
      coeffs.c[(static_cast<std::size_t>(alpha) << n) | beta] = acc * inv;
    }
  }
  return coeffs;
}

DensityMatrix pauli_reconstruct(const PauliCoefficients& coeffs) {
  DensityMatrix out(coeffs.n);
  const std::size_t dim = out.dim();
  // X^alpha Z^beta has entries (-1)^{beta.j} at (j^alpha, j).
  for (std::uint32_t alpha = 0; alpha < dim; ++alpha) {
    for (std::uint32_t beta = 0; beta < dim; ++beta) {
      const cd a = coeffs.at(alpha, beta);
      if (a == cd{0.0, 0.0}) continue;
      for (std::uint32_t j = 0; j < dim; ++j) {
        out.at(j ^ alpha, j) += parity(beta & j) ? -a : a;
      }
    }
  }
  return out;
}

std::vector<cd> pauli_dense(const PauliOp& p) {
  const std::size_t dim = std::size_t{1} << p.n();
  std::vector<cd> m(dim * dim, cd{0.0, 0.0});
  const std::uint32_t a = p.x_mask().index();
  const std::uint32_t b = p.z_mask().index();
  const cd phase = quarter_phase_value(p.phase_quarter());
  for (std::uint32_t j = 0; j < dim; ++j) {
    const cd v = parity(b & j) ? -phase : phase;
    m[static_cast<std::size_t>(j ^ a) * dim + j] = v;
  }
  return m;
}

double trace_distance(const DensityMatrix& s1, const DensityMatrix& s2) {
  check_same_n(s1, s2);
  const auto d = static_cast<Eigen::Index>(s1.dim());
  Eigen::MatrixXcd diff(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      diff(i, j) = s1.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) -
                   s2.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  // The difference of Hermitian matrices is Hermitian, so the singular
  // values are the absolute eigenvalues.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

std::vector<double> measure_in_basis(const DensityMatrix& s,
                                     const std::vector<PureState>& basis) {
  const std::size_t dim = s.dim();
  if (basis.size() != dim) {
    throw std::invalid_argument("measurement basis must contain exactly 2^n vectors");
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != dim) {
      throw std::invalid_argument("measurement basis vector has wrong dimension");
    }
    for (std::size_t j = 0; j <= i; ++j) {
      const cd ip = basis[i].inner(basis[j]);
      const cd expect = (i == j) ? cd{1.0, 0.0} : cd{0.0, 0.0};
      if (std::abs(ip - expect) > kTolEq) {
        throw std::invalid_argument("measurement basis is not orthonormal");
      }
    }
  }
  std::vector<double> probs(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto& b = basis[k].amplitudes();
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
      cd rowdot{0.0, 0.0};
      const cd* row = s.row(i);
      for (std::size_t j = 0; j < dim; ++j) {
        rowdot += row[j] * b[j];
      }
      acc += std::conj(b[i]) * rowdot;
    }
    probs[k] = acc.real();
  }
  return probs;
}

std::vector<PureState> product_basis(const PureState& b0, const PureState& b1, int n) {
  if (b0.n() != 1 || b1.n() != 1) {
    throw std::invalid_argument("product_basis expects single-qubit vectors");
  }
  std::vector<PureState> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t pattern = 0; pattern < (1u << n); ++pattern) {
    const BitString bits(n, pattern);
    PureState v = bits.bit(0) ? b1 : b0;
    for (int q = 1; q < n; ++q) {
      v = v.tensor(bits.bit(q) ? b1 : b0);
    }
    out.push_back(std::move(v));
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& s1, const DensityMatrix& s2) {
  if (s1.n() + s2.n() > kMaxQubits) {
    throw std::invalid_argument("tensor product exceeds the supported qubit cap");
  }
  DensityMatrix out(s1.n() + s2.n());
  const std::size_t d1 = s1.dim();
  const std::size_t d2 = s2.dim();
  const auto& k = kern::active();
  for (std::size_t i1 = 0; i1 < d1; ++i1) {
    for (std::size_t j1 = 0; j1 < d1; ++j1) {
      const cd w = s1.at(i1, j1);
      for (std::size_t i2 = 0; i2 < d2; ++i2) {
        k.scaled_copy(out.row(i1 * d2 + i2) + j1 * d2, w, s2.row(i2), d2);
      }
    }
  }
  return out;
}

DensityMatrix random_density_matrix(int n, RandomSource& rng) {
  // A A+ / tr(A A+) with A a complex Gaussian square matrix: Hermitian,
  // positive semidefinite and unit trace by construction.
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cd> g(dim * dim);
  for (cd& v : g) {
    // Box-Muller from the deterministic unit stream.
    const double u1 = std::max(rng.next_unit(), 1e-300);
    const double u2 = rng.next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    v = cd{r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }
  DensityMatrix s(n);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      cd acc{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) {
        acc += g[i * dim + k] * std::conj(g[j * dim + k]);
      }
      s.at(i, j) = acc;
    }
  }
  const double tr = s.trace().real();
  s.scale(1.0 / tr);
  return s;
}

PureState random_pure_state(int n, RandomSource& rng) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cd> amps(dim);
  for (cd& v : amps) {
    const double u1 = std::max(rng.next_unit(), 1e-300);
    const double u2 = rng.next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    v = cd{r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }
  PureState s = PureState::from_amplitudes(std::move(amps));
  s.normalize();
  return s;
}

}  // namespace qbe
