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

// Reference backend. Written over the raw double lanes so the operation
// order matches the vector backends exactly (componentwise add/mul only;
// complex products expanded by hand, no FP contraction).

namespace qbe::kern {
namespace {

void add_scalar(cd* y, const cd* x, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    yd[i] += xd[i];
  }
}

void axpy_scalar(cd* y, double a, const cd* x, std::size_t n) {
  auto* yd = reinterpret_cast<double*>(y);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    yd[i] += a * xd[i];
  }
}

void scale_scalar(cd* x, double a, std::size_t n) {
  auto* xd = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    xd[i] *= a;
  }
}

void scaled_copy_scalar(cd* dst, cd a, const cd* x, std::size_t n) {
  const double ar = a.real();
  const double ai = a.imag();
  auto* dd = reinterpret_cast<double*>(dst);
  const auto* xd = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xd[2 * i];
    const double xi = xd[2 * i + 1];
    dd[2 * i] = ar * xr - ai * xi;
    dd[2 * i + 1] = ar * xi + ai * xr;
  }
}

void butterfly_scalar(cd* u, cd* v, std::size_t n) {
  auto* ud = reinterpret_cast<double*>(u);
  auto* vd = reinterpret_cast<double*>(v);
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const double a = ud[i];
    const double b = vd[i];
    ud[i] = a + b;
    vd[i] = a - b;
  }
}

void apply_signs_scalar(cd* x, const double* s, std::size_t n) {
  auto* xd = reinterpret_cast<double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    xd[2 * i] *= s[i];
    xd[2 * i + 1] *= s[i];
  }
}

const Kernels kScalar = {
    "scalar",     add_scalar,       axpy_scalar,
    scale_scalar, scaled_copy_scalar, butterfly_scalar,
    apply_signs_scalar,
};

}  // namespace

const Kernels& scalar() { return kScalar; }

}  // namespace qbe::kern
