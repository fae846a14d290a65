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

// Compiled with -mavx2. Nothing here may run unless the dispatcher has
// confirmed AVX2 support through CPUID.

#include "jdpp/simd.hpp"

#include <immintrin.h>

namespace jdpp::simd {
namespace {

// Bits 0 and 1 act inside a group of four doubles, so both are applied in
// registers before the group is stored. The per-element operation sequence
// is the same as the scalar bit-by-bit sweep.
template <bool Subtract>
inline __m256d combine(__m256d a, __m256d b) {
  if constexpr (Subtract) {
    return _mm256_sub_pd(a, b);
  } else {
    return _mm256_add_pd(a, b);
  }
}

template <bool Subtract>
void lattice_avx2(double* f, std::size_t n_bits) {
  const std::size_t size = std::size_t{1} << n_bits;
  if (n_bits < 2) {
    // One or two entries: nothing worth vectorizing.
    for (std::size_t b = 0; b < n_bits; ++b) {
      const std::size_t stride = std::size_t{1} << b;
      for (std::size_t block = 0; block < size; block += 2 * stride) {
        for (std::size_t i = 0; i < stride; ++i) {
          if constexpr (Subtract) {
            f[block + i] -= f[block + stride + i];
          } else {
            f[block + i] += f[block + stride + i];
          }
        }
      }
    }
    return;
  }

  for (std::size_t g = 0; g < size; g += 4) {
    __m256d v = _mm256_loadu_pd(f + g);
    // bit 0: lanes 0,2 combine with lanes 1,3
    const __m256d swapped = _mm256_permute_pd(v, 0b0101);
    v = _mm256_blend_pd(combine<Subtract>(v, swapped), v, 0b1010);
    // bit 1: lanes 0,1 combine with lanes 2,3
    const __m256d halves = _mm256_permute2f128_pd(v, v, 0x01);
    v = _mm256_blend_pd(combine<Subtract>(v, halves), v, 0b1100);
    _mm256_storeu_pd(f + g, v);
  }

  for (std::size_t b = 2; b < n_bits; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t block = 0; block < size; block += 2 * stride) {
      double* lo = f + block;
      const double* hi = f + block + stride;
      for (std::size_t i = 0; i < stride; i += 4) {
        const __m256d a = _mm256_loadu_pd(lo + i);
        const __m256d c = _mm256_loadu_pd(hi + i);
        _mm256_storeu_pd(lo + i, combine<Subtract>(a, c));
      }
    }
  }
}

void mobius_avx2(double* f, std::size_t n_bits) {
  lattice_avx2<true>(f, n_bits);
}

void zeta_avx2(double* f, std::size_t n_bits) {
  lattice_avx2<false>(f, n_bits);
}

void subtract_abs2_avx2(double* acc, const std::complex<double>* v,
                        std::size_t n) {
  const double* raw = reinterpret_cast<const double*>(v);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(raw + 2 * i);      // r0 i0 r1 i1
    const __m256d b = _mm256_loadu_pd(raw + 2 * i + 4);  // r2 i2 r3 i3
    const __m256d sa = _mm256_mul_pd(a, a);
    const __m256d sb = _mm256_mul_pd(b, b);
    // |v0|^2 |v2|^2 |v1|^2 |v3|^2
    const __m256d h = _mm256_hadd_pd(sa, sb);
    const __m256d norms = _mm256_permute4x64_pd(h, 0b11011000);
    const __m256d cur = _mm256_loadu_pd(acc + i);
    _mm256_storeu_pd(acc + i, _mm256_sub_pd(cur, norms));
  }
  for (; i < n; ++i) {
    const double re = v[i].real();
    const double im = v[i].imag();
    const double rr = re * re;
    const double ii = im * im;
    acc[i] -= rr + ii;
  }
}

void axpy_sub_avx2(std::complex<double>* y, std::complex<double> a,
                   const std::complex<double>* x, std::size_t n) {
  const double ar = a.real();
  const double ai = a.imag();
  const __m256d arv = _mm256_set1_pd(ar);
  const __m256d aiv = _mm256_set1_pd(ai);
  double* yr = reinterpret_cast<double*>(y);
  const double* xr = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d t1 = _mm256_mul_pd(arv, xv);
    const __m256d t2 = _mm256_mul_pd(aiv, xs);
    // even lanes t1 - t2, odd lanes t1 + t2
    const __m256d prod = _mm256_addsub_pd(t1, t2);
    const __m256d yv = _mm256_loadu_pd(yr + 2 * i);
    _mm256_storeu_pd(yr + 2 * i, _mm256_sub_pd(yv, prod));
  }
  for (; i < n; ++i) {
    const double xre = x[i].real();
    const double xim = x[i].imag();
    const double pr = ar * xre - ai * xim;
    const double pi = ar * xim + ai * xre;
    y[i] = {y[i].real() - pr, y[i].imag() - pi};
  }
}

}  // namespace

namespace detail {
const KernelTable* avx2_table() {
  static const KernelTable table{Backend::avx2, mobius_avx2, zeta_avx2,
                                 subtract_abs2_avx2, axpy_sub_avx2};
  return &table;
}
}  // namespace detail

}  // namespace jdpp::simd
