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

#ifndef QBE_KERNELS_HPP
#define QBE_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qbe::kern {

using cd = std::complex<double>;

// Flat array kernels behind the dense-matrix operations. Every backend must
// produce bit-identical results to the scalar reference (same operation
// order, no FP contraction), so backends are interchangeable mid-run.
struct Kernels {
  const char* name;

  // y[i] += x[i]
  void (*add)(cd* y, const cd* x, std::size_t n);
  // y[i] += a * x[i]   (real weight; key-average accumulation)
  void (*axpy)(cd* y, double a, const cd* x, std::size_t n);
  // x[i] *= a
  void (*scale)(cd* x, double a, std::size_t n);
  // dst[i] = a * x[i]  (complex weight; Kronecker blocks)
  void (*scaled_copy)(cd* dst, cd a, const cd* x, std::size_t n);
  // (u[i], v[i]) -> (u[i] + v[i], u[i] - v[i])   (Hadamard butterfly)
  void (*butterfly)(cd* u, cd* v, std::size_t n);
  // x[i] *= s[i] with s[i] in {+1.0, -1.0}        (Z-mask sign layer)
  void (*apply_signs)(cd* x, const double* s, std::size_t n);
};

// Scalar reference; always available.
const Kernels& scalar();

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported();
const Kernels& avx2();
#endif

// Backend chosen at startup: best supported ISA, overridable with the
// environment variable QBELAB_KERNELS (values: auto, scalar, avx2).
const Kernels& active();

// Programmatic override; throws std::invalid_argument for unknown or
// unsupported names. "auto" restores runtime detection.
void set_active(const std::string& name);

std::vector<std::string> available();

}  // namespace qbe::kern

#endif
