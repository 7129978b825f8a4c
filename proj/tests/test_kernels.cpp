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

#include <vector>

#include "qbe/kernels.hpp"
#include "qbe/rng.hpp"

using qbe::SeededRandom;
using qbe::kern::cd;
using qbe::kern::Kernels;

namespace {

std::vector<cd> random_array(std::size_t n, SeededRandom& rng) {
  std::vector<cd> v(n);
  for (cd& x : v) {
    x = cd{rng.next_unit() * 2.0 - 1.0, rng.next_unit() * 2.0 - 1.0};
  }
  return v;
}

std::vector<double> random_signs(std::size_t n, SeededRandom& rng) {
  std::vector<double> s(n);
  for (double& x : s) {
    x = rng.next_u64() & 1 ? 1.0 : -1.0;
  }
  return s;
}

// Backends must be drop-in replacements mid-run, so the comparison is
// bitwise, not approximate.
void compare_backends(const Kernels& a, const Kernels& b, std::size_t n, std::uint64_t seed) {
  SeededRandom rng(seed);
  const std::vector<cd> x = random_array(n, rng);
  const std::vector<cd> y = random_array(n, rng);
  const std::vector<double> signs = random_signs(n, rng);
  const double w = rng.next_unit() * 3.0 - 1.5;
  const cd c{rng.next_unit() - 0.5, rng.next_unit() - 0.5};

  auto expect_equal = [](const std::vector<cd>& u, const std::vector<cd>& v) {
    REQUIRE(u.size() == v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(u[i].real() == v[i].real());
      CHECK(u[i].imag() == v[i].imag());
    }
  };

  {
    std::vector<cd> ya = y, yb = y;
    a.add(ya.data(), x.data(), n);
    b.add(yb.data(), x.data(), n);
    expect_equal(ya, yb);
  }
  {
    std::vector<cd> ya = y, yb = y;
    a.axpy(ya.data(), w, x.data(), n);
    b.axpy(yb.data(), w, x.data(), n);
    expect_equal(ya, yb);
  }
  {
    std::vector<cd> xa = x, xb = x;
    a.scale(xa.data(), w, n);
    b.scale(xb.data(), w, n);
    expect_equal(xa, xb);
  }
  {
    std::vector<cd> da(n), db(n);
    a.scaled_copy(da.data(), c, x.data(), n);
    b.scaled_copy(db.data(), c, x.data(), n);
    expect_equal(da, db);
  }
  {
    std::vector<cd> ua = x, va = y, ub = x, vb = y;
    a.butterfly(ua.data(), va.data(), n);
    b.butterfly(ub.data(), vb.data(), n);
    expect_equal(ua, ub);
    expect_equal(va, vb);
  }
  {
    std::vector<cd> xa = x, xb = x;
    a.apply_signs(xa.data(), signs.data(), n);
    b.apply_signs(xb.data(), signs.data(), n);
    expect_equal(xa, xb);
  }
}

}  // namespace

TEST_CASE("scalar kernels match hand loops") {
  SeededRandom rng(11);
  const std::size_t n = 37;
  const std::vector<cd> x = random_array(n, rng);
  std::vector<cd> y = random_array(n, rng);
  const std::vector<cd> y0 = y;
  const auto& k = qbe::kern::scalar();

  k.axpy(y.data(), 0.25, x.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(y[i] == y0[i] + 0.25 * x[i]);
  }

  std::vector<cd> u = x, v = y0;
  k.butterfly(u.data(), v.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(u[i] == x[i] + y0[i]);
    CHECK(v[i] == x[i] - y0[i]);
  }

  std::vector<cd> d(n);
  const cd c{0.5, -2.0};
  k.scaled_copy(d.data(), c, x.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    const cd expect{c.real() * x[i].real() - c.imag() * x[i].imag(),
                    c.real() * x[i].imag() + c.imag() * x[i].real()};
    CHECK(d[i] == expect);
  }
}

TEST_CASE("butterfly twice is doubling, signs twice is identity") {
  SeededRandom rng(12);
  const std::size_t n = 16;
  const std::vector<cd> x0 = random_array(n, rng);
  const std::vector<cd> y0 = random_array(n, rng);
  const std::vector<double> signs = random_signs(n, rng);
  const auto& k = qbe::kern::active();

  std::vector<cd> x = x0, y = y0;
  k.butterfly(x.data(), y.data(), n);
  k.butterfly(x.data(), y.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(x[i] == 2.0 * x0[i]);
    CHECK(y[i] == 2.0 * y0[i]);
  }

  x = x0;
  k.apply_signs(x.data(), signs.data(), n);
  k.apply_signs(x.data(), signs.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(x[i] == x0[i]);
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 backend is bit-identical to the scalar reference") {
  if (!qbe::kern::avx2_supported()) {
    return;
  }
  // Lengths around the 4-lane boundaries to cover all tail paths.
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 33u, 64u, 255u, 256u}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      compare_backends(qbe::kern::scalar(), qbe::kern::avx2(), n, seed * 977 + n);
    }
  }
}
#endif

TEST_CASE("backend selection") {
  const auto names = qbe::kern::available();
  REQUIRE(!names.empty());
  CHECK(names.front() == "scalar");
  for (const auto& name : names) {
    qbe::kern::set_active(name);
    CHECK(std::string(qbe::kern::active().name) == name);
  }
  qbe::kern::set_active("auto");
  CHECK_THROWS_AS(qbe::kern::set_active("no_such_backend"), std::invalid_argument);
}
