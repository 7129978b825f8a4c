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

// Naive dense-matrix oracle used to pin expected values independently of
// the library's kernel path: textbook loops only, no shared code.

#ifndef QBE_TESTS_ORACLE_HELPERS_HPP
#define QBE_TESTS_ORACLE_HELPERS_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "qbe/bitstring.hpp"
#include "qbe/density.hpp"

namespace oracle {

using cd = std::complex<double>;

struct Mat {
  std::size_t d = 0;
  std::vector<cd> a;

  Mat() = default;
  explicit Mat(std::size_t dim) : d(dim), a(dim * dim, cd{0.0, 0.0}) {}

  cd& at(std::size_t i, std::size_t j) { return a[i * d + j]; }
  const cd& at(std::size_t i, std::size_t j) const { return a[i * d + j]; }

  static Mat eye(std::size_t dim) {
    Mat m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline Mat mul(const Mat& x, const Mat& y) {
  Mat out(x.d);
  for (std::size_t i = 0; i < x.d; ++i) {
    for (std::size_t k = 0; k < x.d; ++k) {
      const cd v = x.at(i, k);
      if (v == cd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < x.d; ++j) {
        out.at(i, j) += v * y.at(k, j);
      }
    }
  }
  return out;
}

inline Mat adjoint(const Mat& x) {
  Mat out(x.d);
  for (std::size_t i = 0; i < x.d; ++i) {
    for (std::size_t j = 0; j < x.d; ++j) {
      out.at(i, j) = std::conj(x.at(j, i));
    }
  }
  return out;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.d * y.d);
  for (std::size_t i1 = 0; i1 < x.d; ++i1) {
    for (std::size_t j1 = 0; j1 < x.d; ++j1) {
      for (std::size_t i2 = 0; i2 < y.d; ++i2) {
        for (std::size_t j2 = 0; j2 < y.d; ++j2) {
          out.at(i1 * y.d + i2, j1 * y.d + j2) = x.at(i1, j1) * y.at(i2, j2);
        }
      }
    }
  }
  return out;
}

inline Mat conjugate(const Mat& u, const Mat& s) { return mul(mul(u, s), adjoint(u)); }

inline Mat gate_x() {
  Mat m(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

inline Mat gate_z() {
  Mat m(2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

inline Mat gate_h() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat m(2);
  m.at(0, 0) = r;
  m.at(0, 1) = r;
  m.at(1, 0) = r;
  m.at(1, 1) = -r;
  return m;
}

// U^b = tensor of U at the set bits (qubit 0 leftmost).
inline Mat gate_power(const Mat& u, const qbe::BitString& b) {
  Mat out = b.bit(0) ? u : Mat::eye(2);
  for (int q = 1; q < b.n(); ++q) {
    out = kron(out, b.bit(q) ? u : Mat::eye(2));
  }
  return out;
}

inline Mat h_layer(int n) { return gate_power(gate_h(), qbe::BitString::ones(n)); }

// i^phase X^a Z^b built from 2x2 factors.
inline Mat pauli_matrix(const qbe::BitString& a, const qbe::BitString& b, int phase = 0) {
  Mat m = mul(gate_power(gate_x(), a), gate_power(gate_z(), b));
  const cd ph = qbe::quarter_phase_value(phase);
  for (cd& v : m.a) v *= ph;
  return m;
}

inline Mat from_density(const qbe::DensityMatrix& s) {
  Mat m(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      m.at(i, j) = s.at(i, j);
    }
  }
  return m;
}

inline Mat from_state(const qbe::PureState& psi) {
  Mat m(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    for (std::size_t j = 0; j < psi.dim(); ++j) {
      m.at(i, j) = psi.amplitude(static_cast<std::uint32_t>(i)) *
                   std::conj(psi.amplitude(static_cast<std::uint32_t>(j)));
    }
  }
  return m;
}

inline double max_diff(const Mat& x, const Mat& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.a.size(); ++i) {
    d = std::max(d, std::abs(x.a[i] - y.a[i]));
  }
  return d;
}

inline double max_diff(const Mat& x, const qbe::DensityMatrix& y) {
  return max_diff(x, from_density(y));
}

}  // namespace oracle

#endif
