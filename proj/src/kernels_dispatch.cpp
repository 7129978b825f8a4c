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

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace qbe::kern {
namespace {

const Kernels* detect_best() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) {
    return &avx2();
  }
#endif
  return &scalar();
}

const Kernels* resolve(const std::string& name) {
  if (name == "auto") return detect_best();
  if (name == "scalar") return &scalar();
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2") {
    if (!avx2_supported()) {
      throw std::invalid_argument("kernel backend 'avx2' not supported on this CPU");
    }
    return &avx2();
  }
#endif
  throw std::invalid_argument("unknown kernel backend: " + name);
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> s = [] {
    if (const char* env = std::getenv("QBELAB_KERNELS")) {
      return resolve(env);
    }
    return detect_best();
  }();
  return s;
}

}  // namespace

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported() {
  return __builtin_cpu_supports("avx2") != 0;
}
#endif

const Kernels& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(const std::string& name) {
  slot().store(resolve(name), std::memory_order_relaxed);
}

std::vector<std::string> available() {
  std::vector<std::string> out{"scalar"};
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) {
    out.emplace_back("avx2");
  }
#endif
  return out;
}

}  // namespace qbe::kern
