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

// AArch64 only; NEON is part of the base ISA there, so no runtime probe is
// needed beyond the build-time architecture check.

#include "jdpp/simd.hpp"

#include <arm_neon.h>

namespace jdpp::simd {
namespace {

template <bool Subtract>
void lattice_neon(double* f, std::size_t n_bits) {
  const std::size_t size = std::size_t{1} << n_bits;
  for (std::size_t b = 0; b < n_bits; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t block = 0; block < size; block += 2 * stride) {
      double* lo = f + block;
      const double* hi = f + block + stride;
      if (stride == 1) {
        if constexpr (Subtract) {
          lo[0] -= hi[0];
        } else {
          lo[0] += hi[0];
        }
        continue;
      }
      for (std::size_t i = 0; i < stride; i += 2) {
        const float64x2_t a = vld1q_f64(lo + i);
        const float64x2_t c = vld1q_f64(hi + i);
        if constexpr (Subtract) {
          vst1q_f64(lo + i, vsubq_f64(a, c));
        } else {
          vst1q_f64(lo + i, vaddq_f64(a, c));
        }
      }
    }
  }
}

void mobius_neon(double* f, std::size_t n_bits) {
  lattice_neon<true>(f, n_bits);
}

void zeta_neon(double* f, std::size_t n_bits) {
  lattice_neon<false>(f, n_bits);
}

void subtract_abs2_neon(double* acc, const std::complex<double>* v,
                        std::size_t n) {
  const double* raw = reinterpret_cast<const double*>(v);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vld1q_f64(raw + 2 * i);
    const float64x2_t b = vld1q_f64(raw + 2 * i + 2);
    const float64x2_t norms = vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b));
    vst1q_f64(acc + i, vsubq_f64(vld1q_f64(acc + i), norms));
  }
  for (; i < n; ++i) {
    const double re = v[i].real();
    const double im = v[i].imag();
    const double rr = re * re;
    const double ii = im * im;
    acc[i] -= rr + ii;
  }
}

void axpy_sub_neon(std::complex<double>* y, std::complex<double> a,
                   const std::complex<double>* x, std::size_t n) {
  const float64x2_t arv = vdupq_n_f64(a.real());
  const float64_t sign_data[2] = {-1.0, 1.0};
  const float64x2_t aiv = vmulq_f64(vdupq_n_f64(a.imag()), vld1q_f64(sign_data));
  double* yr = reinterpret_cast<double*>(y);
  const double* xr = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = vld1q_f64(xr + 2 * i);
    const float64x2_t xs = vextq_f64(xv, xv, 1);
    // (ar*xr + (-ai)*xi, ar*xi + ai*xr); sign flips are exact
    const float64x2_t prod = vaddq_f64(vmulq_f64(arv, xv), vmulq_f64(aiv, xs));
    vst1q_f64(yr + 2 * i, vsubq_f64(vld1q_f64(yr + 2 * i), prod));
  }
}

}  // namespace

namespace detail {
const KernelTable* neon_table() {
  static const KernelTable table{Backend::neon, mobius_neon, zeta_neon,
                                 subtract_abs2_neon, axpy_sub_neon};
  return &table;
}
}  // namespace detail

}  // namespace jdpp::simd
