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

#ifndef QBE_PAULI_HPP
#define QBE_PAULI_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include "qbe/bitstring.hpp"

namespace qbe {

// n-qubit operator i^phase * X^x Z^z, held as two exponent masks plus a
// quarter-phase exponent. The schemes here only ever produce phases 0 and
// 2 (signs), but products are tracked mod 4 so a stray Y-type factor can
// never silently drop a phase.
class PauliOp {
 public:
  PauliOp(BitString x_mask, BitString z_mask, int phase_quarter = 0)
      : x_(x_mask), z_(z_mask), phase_(((phase_quarter % 4) + 4) % 4) {
    if (x_.n() != z_.n()) {
      throw std::invalid_argument("PauliOp: mask lengths differ");
    }
  }

  static PauliOp identity(int n) {
    return PauliOp(BitString::zeros(n), BitString::zeros(n));
  }
  static PauliOp x_mask_op(BitString a) {
    const int n = a.n();
    return PauliOp(a, BitString::zeros(n));
  }
  static PauliOp z_mask_op(BitString b) {
    const int n = b.n();
    return PauliOp(BitString::zeros(n), b);
  }

  int n() const { return x_.n(); }
  const BitString& x_mask() const { return x_; }
  const BitString& z_mask() const { return z_; }
  int phase_quarter() const { return phase_; }

  bool is_identity_mask() const { return x_.is_zero() && z_.is_zero(); }

  // (i^p1 X^a1 Z^b1)(i^p2 X^a2 Z^b2)
//    = i^{p1+p2} (-1)^{b1 . a2} X^{a1^a2} Z^{b1^b2}
  PauliOp operator*(const PauliOp& rhs) const {
    if (n() != rhs.n()) {
      throw std::invalid_argument("PauliOp: size mismatch in product");
    }
    const int extra = 2 * z_.dot(rhs.x_);
    return PauliOp(x_ ^ rhs.x_, z_ ^ rhs.z_, phase_ + rhs.phase_ + extra);
  }

  bool operator==(const PauliOp& rhs) const {
    return x_ == rhs.x_ && z_ == rhs.z_ && phase_ == rhs.phase_;
  }

  std::string str() const {
    static const char* kPhase[] = {"+", "+i*", "-", "-i*"};
    std::string s = kPhase[phase_];
    for (int i = 0; i < n(); ++i) {
      const int xb = x_.bit(i);
      const int zb = z_.bit(i);
      s += xb ? (zb ? "(XZ)" : "X") : (zb ? "Z" : "I");
    }
    return s;
  }

 private:
  BitString x_, z_;
  int phase_;
};

// Sign picked up when Z^z is moved left-to-right past X^x:
// Z^z X^x = (-1)^{z . x} X^x Z^z.
inline int commute_z_past_x(const BitString& z_exp, const BitString& x_exp) {
  return z_exp.dot(x_exp) == 0 ? +1 : -1;
}

// Transversal-Hadamard conjugate: H^(x)n (i^p X^a Z^b) H^(x)n
//   = i^p Z^a X^b = i^p (-1)^{a . b} X^b Z^a.
inline PauliOp conjugate_pauli_by_h(const PauliOp& p) {
  const int extra = 2 * p.x_mask().dot(p.z_mask());
  return PauliOp(p.z_mask(), p.x_mask(), p.phase_quarter() + extra);
}

inline std::complex<double> quarter_phase_value(int phase_quarter) {
  switch (((phase_quarter % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace qbe

#endif
