/*
   Copyright 2026 The jdpp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "jdpp/simd.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace jdpp::simd {

namespace detail {
#if !defined(JDPP_HAVE_AVX2_TU)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(JDPP_HAVE_NEON_TU)
const KernelTable* neon_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& select_active() {
  if (const char* forced = std::getenv("JDPP_SIMD"); forced && *forced) {
    const std::string name(forced);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (name == backend_name(b)) {
        if (available(b)) return kernels(b);
        break;
      }
    }
    // Unknown or unavailable request: fall through to auto-selection.
  }
  if (available(Backend::avx2)) return kernels(Backend::avx2);
  if (available(Backend::neon)) return kernels(Backend::neon);
  return detail::scalar_table();
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
    case Backend::neon:
      return detail::neon_table() != nullptr;
  }
  return false;
}

const KernelTable& kernels(Backend b) {
  if (!available(b)) {
    throw std::invalid_argument("SIMD backend not available: " +
                                std::string(backend_name(b)));
  }
  switch (b) {
    case Backend::avx2:
      return *detail::avx2_table();
    case Backend::neon:
      return *detail::neon_table();
    case Backend::scalar:
      break;
  }
  return detail::scalar_table();
}

const KernelTable& active() {
  static const KernelTable& table = select_active();
  return table;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
    if (available(b)) out.push_back(b);
  }
  return out;
}

}  // namespace jdpp::simd
