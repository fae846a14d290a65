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

#pragma once

// Data-parallel inner loops with a scalar reference implementation and
// vectorized variants chosen once at runtime.
//
// Every variant performs the same floating point operations in the same
// order per element (no FMA contraction), so all backends are required to
// agree bit-for-bit with the scalar reference. The equivalence tests depend
// on that.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace jdpp::simd {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend b);

struct KernelTable {
  Backend backend;

  // f[m] -= f[m | bit] for every mask m lacking the bit, one bit at a time.
  // Turns superset sums of correlations into exact configuration masses.
  void (*superset_mobius)(double* f, std::size_t n_bits);

  // f[m] += f[m | bit]; inverse of superset_mobius.
  void (*superset_zeta)(double* f, std::size_t n_bits);

  // acc[i] -= re(v[i])^2 + im(v[i])^2
  void (*subtract_abs2)(double* acc, const std::complex<double>* v,
                        std::size_t n);

  // y[i] -= a * x[i] (complex)
  void (*complex_axpy_sub)(std::complex<double>* y, std::complex<double> a,
                           const std::complex<double>* x, std::size_t n);
};

// True when the backend was compiled in and the running CPU supports it.
bool available(Backend b);

// The table for a specific backend; throws std::invalid_argument if the
// backend is not available on this machine.
const KernelTable& kernels(Backend b);

// The table used by the library. Picks the widest available backend, unless
// the JDPP_SIMD environment variable names another one ("scalar", "avx2",
// "neon").
const KernelTable& active();

std::vector<Backend> available_backends();

// Convenience wrappers over active().
inline void superset_mobius(std::span<double> f, std::size_t n_bits) {
  active().superset_mobius(f.data(), n_bits);
}
inline void superset_zeta(std::span<double> f, std::size_t n_bits) {
  active().superset_zeta(f.data(), n_bits);
}
inline void subtract_abs2(std::span<double> acc,
                          std::span<const std::complex<double>> v) {
  active().subtract_abs2(acc.data(), v.data(), acc.size());
}
inline void complex_axpy_sub(std::span<std::complex<double>> y,
                             std::complex<double> a,
                             std::span<const std::complex<double>> x) {
  active().complex_axpy_sub(y.data(), a, x.data(), y.size());
}

namespace detail {
// Per-backend entry points; defined in kernels_<backend>.cpp.
const KernelTable& scalar_table();
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace jdpp::simd
