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

#ifndef QBE_DENSITY_HPP
#define QBE_DENSITY_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "json.hpp"
#include "qbe/bitstring.hpp"
#include "qbe/pauli.hpp"

namespace qbe {

using cd = std::complex<double>;

// Equality / reconstruction assertions.
inline constexpr double kTolEq = 1e-9;
// Pure algebraic identities (entries are dyadic rationals; this is generous).
inline constexpr double kTolAlg = 1e-12;
// Largest supported block size. Everything the lab verifies fits in n <= 4;
// the cap keeps exhaustive key averaging cheap.
inline constexpr int kMaxQubits = 8;

class PureState;

// Exact 2^n x 2^n complex matrix, row major.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n);

  static DensityMatrix maximally_mixed(int n);
  static DensityMatrix zero(int n) { return DensityMatrix(n); }

  int n() const { return n_; }
  std::size_t dim() const { return dim_; }

  cd& at(std::size_t row, std::size_t col) { return a_[row * dim_ + col]; }
  const cd& at(std::size_t row, std::size_t col) const { return a_[row * dim_ + col]; }

  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }
  cd* row(std::size_t r) { return a_.data() + r * dim_; }
  const cd* row(std::size_t r) const { return a_.data() + r * dim_; }

  cd trace() const;
  double max_abs_diff(const DensityMatrix& other) const;

  // Hermitian + unit trace + positive semidefinite (eigenvalues >= -tol).
  bool is_valid_state(double tol = kTolEq) const;
  void require_valid(double tol = kTolEq) const;

  void accumulate(const DensityMatrix& other, double weight);
  void scale(double s);

  nlohmann::json to_json() const;
  static DensityMatrix from_json(const nlohmann::json& j);

  bool operator==(const DensityMatrix& other) const {
    return n_ == other.n_ && a_ == other.a_;
  }

 private:
  int n_;
  std::size_t dim_;
  std::vector<cd> a_;
};

// 2^n complex amplitudes, unit norm expected for physical states.
class PureState {
 public:
  explicit PureState(int n);  // |00...0>

  static PureState basis(const BitString& b);
  static PureState basis(int n, std::uint32_t index);
  static PureState from_amplitudes(std::vector<cd> amps);

  // |+>^(x)n
  static PureState uniform_plus(int n);
  // Single qubit (|0> + phase |1>)/sqrt(2); phase = +1, -1, +i, -i give
  // the |+>, |->, |+i>, |-i> states.
  static PureState half_turn(cd phase);

  int n() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  cd amplitude(std::uint32_t index) const { return amps_[index]; }
  cd& amplitude(std::uint32_t index) { return amps_[index]; }
  const std::vector<cd>& amplitudes() const { return amps_; }

  double norm() const;
  void normalize();

  cd inner(const PureState& other) const;  // <this|other>
  PureState tensor(const PureState& other) const;
  DensityMatrix density() const;

 private:
  int n_;
  std::vector<cd> amps_;
};

// ---- Operations ----

// P s P^dagger. Quarter phases cancel under conjugation.
DensityMatrix pauli_apply(const PauliOp& p, const DensityMatrix& s);

// H^(x)n s H^(x)n. Involutive.
DensityMatrix hadamard_all(const DensityMatrix& s);

// Coefficients of s = sum_{alpha,beta} a_{alpha,beta} X^alpha Z^beta.
struct PauliCoefficients {
  int n = 0;
  // Indexed by (alpha << n) | beta.
  std::vector<cd> c;

  cd at(std::uint32_t alpha, std::uint32_t beta) const {
    return c[(static_cast<std::size_t>(alpha) << n) | beta];
  }
};

PauliCoefficients pauli_decompose(const DensityMatrix& s);
DensityMatrix pauli_reconstruct(const PauliCoefficients& coeffs);

// Dense matrix of a PauliOp (row major, side 2^n).
std::vector<cd> pauli_dense(const PauliOp& p);

// (1/2) * trace norm of (s1 - s2), via Hermitian eigendecomposition of the
// difference.
double trace_distance(const DensityMatrix& s1, const DensityMatrix& s2);

// Probabilities <b|s|b> for an orthonormal basis; throws if the vectors are
// not pairwise orthonormal (tolerance kTolEq) or do not span the space.
std::vector<double> measure_in_basis(const DensityMatrix& s,
                                     const std::vector<PureState>& basis);

// Product basis over n qubits: vector index is the outcome pattern, pattern
// bit i (qubit-0-first convention) selects b0 or b1 on qubit i.
std::vector<PureState> product_basis(const PureState& b0, const PureState& b1, int n);

DensityMatrix tensor(const DensityMatrix& s1, const DensityMatrix& s2);

// Seeded random states for property tests and the verification CLI.
class RandomSource;
DensityMatrix random_density_matrix(int n, RandomSource& rng);
PureState random_pure_state(int n, RandomSource& rng);

}  // namespace qbe

#endif
