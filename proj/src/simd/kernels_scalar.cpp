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

namespace jdpp::simd {
namespace {

void mobius_scalar(double* f, std::size_t n_bits) {
  const std::size_t size = std::size_t{1} << n_bits;
  for (std::size_t b = 0; b < n_bits; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t block = 0; block < size; block += 2 * stride) {
      for (std::size_t i = 0; i < stride; ++i) {
        f[block + i] -= f[block + stride + i];
      }
    }
  }
}

void zeta_scalar(double* f, std::size_t n_bits) {
  const std::size_t size = std::size_t{1} << n_bits;
  for (std::size_t b = 0; b < n_bits; ++b) {
    const std::size_t stride = std::size_t{1} << b;
    for (std::size_t block = 0; block < size; block += 2 * stride) {
      for (std::size_t i = 0; i < stride; ++i) {
        f[block + i] += f[block + stride + i];
      }
    }
  }
}

void subtract_abs2_scalar(double* acc, const std::complex<double>* v,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = v[i].real();
    const double im = v[i].imag();
    const double rr = re * re;
    const double ii = im * im;
    acc[i] -= rr + ii;
  }
}

// Written out by hand: std::complex operator* may take a slow NaN-recovery
// path, and the vector variants must reproduce these exact operations.
void axpy_sub_scalar(std::complex<double>* y, std::complex<double> a,
                     const std::complex<double>* x, std::size_t n) {
  const double ar = a.real();
  const double ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    const double pr = ar * xr - ai * xi;
    const double pi = ar * xi + ai * xr;
    y[i] = {y[i].real() - pr, y[i].imag() - pi};
  }
}

}  // namespace

namespace detail {
const KernelTable& scalar_table() {
  static const KernelTable table{Backend::scalar, mobius_scalar, zeta_scalar,
                                 subtract_abs2_scalar, axpy_sub_scalar};
  return table;
}
}  // namespace detail

}  // namespace jdpp::simd
