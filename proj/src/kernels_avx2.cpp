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

#include "qbe/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// AVX2 backend. Must stay bit-identical to the scalar reference: plain
// mul/add only (no FMA), same per-element operation order. This TU is
// compiled with -mavx2 -mfma -ffp-contract=off; callers reach it only
// after the CPUID check in the dispatcher.

namespace qbe::kern {
namespace {

void add_avx2(cd* y, const cd* x, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d a = _mm256_loadu_pd(yd + i);
    __m256d b = _mm256_loadu_pd(xd + i);
    _mm256_storeu_pd(yd + i, _mm256_add_pd(a, b));
  }
  for (; i < len; ++i) {
    yd[i] += xd[i];
  }
}

void axpy_avx2(cd* y, double a, const cd* x, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  const __m256d va = _mm256_set1_pd(a);
  const std::size_t len = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vy = _mm256_loadu_pd(yd + i);
    __m256d vx = _mm256_loadu_pd(xd + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(yd + i, vy);
  }
  for (; i < len; ++i) {
    yd[i] += a * xd[i];
  }
}

void scale_avx2(cd* x, double a, std::size_t n) {
  auto* xd = reinterpret_cast<double*>(x);
  const __m256d va = _mm256_set1_pd(a);
  const std::size_t len = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d v = _mm256_loadu_pd(xd + i);
    _mm256_storeu_pd(xd + i, _mm256_mul_pd(v, va));
  }
  for (; i < len; ++i) {
    xd[i] *= a;
  }
}

void scaled_copy_avx2(cd* dst, cd a, const cd* x, std::size_t n) {
  const double ar = a.real();
  const double ai = a.imag();
  auto* dd = reinterpret_cast<double*>(dst);
  const auto* xd = reinterpret_cast<const double*>(x);
  // Two complex values per vector: (xr0, xi0, xr1, xi1).
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d sw = _mm256_permute_pd(vx, 0x5);  // (xi0, xr0, xi1, xr1)
    __m256d t1 = _mm256_mul_pd(var, vx);
    __m256d t2 = _mm256_mul_pd(vai, sw);
    // addsub: even lanes t1-t2 (real), odd lanes t1+t2 (imag).
    _mm256_storeu_pd(dd + 2 * i, _mm256_addsub_pd(t1, t2));
  }
  for (; i < n; ++i) {
    const double xr = xd[2 * i];
    const double xi = xd[2 * i + 1];
    dd[2 * i] = ar * xr - ai * xi;
    dd[2 * i + 1] = ar * xi + ai * xr;
  }
}

void butterfly_avx2(cd* u, cd* v, std::size_t n) {
  auto* ud = reinterpret_cast<double*>(u);
  auto* vd = reinterpret_cast<double*>(v);
  const std::size_t len = 2 * n;
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d a = _mm256_loadu_pd(ud + i);
    __m256d b = _mm256_loadu_pd(vd + i);
    _mm256_storeu_pd(ud + i, _mm256_add_pd(a, b));
    _mm256_storeu_pd(vd + i, _mm256_sub_pd(a, b));
  }
  for (; i < len; ++i) {
    const double a = ud[i];
    const double b = vd[i];
    ud[i] = a + b;
    vd[i] = a - b;
  }
}

void apply_signs_avx2(cd* x, const double* s, std::size_t n) {
  auto* xd = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vs = _mm256_setr_pd(s[i], s[i], s[i + 1], s[i + 1]);
    __m256d v = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, _mm256_mul_pd(v, vs));
  }
  for (; i < n; ++i) {
    xd[2 * i] *= s[i];
    xd[2 * i + 1] *= s[i];
  }
}

const Kernels kAvx2 = {
    "avx2",     add_avx2,        axpy_avx2,      scale_avx2,
    scaled_copy_avx2, butterfly_avx2, apply_signs_avx2,
};

}  // namespace

const Kernels& avx2() { return kAvx2; }

}  // namespace qbe::kern

#endif  // x86_64
