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

// Extended Fredholm determinants Det(1 + A) for block operators.
//
// At finite dimension the extension to trace-class-even / Hilbert-Schmidt-odd
// operators coincides with the ordinary determinant, so the three methods
// below are independent routes to one number:
//   series - 1 + sum_n C_n(A), with C_n from power traces
//   direct - pivoted LU of 1 + A
//   block  - Schur factorization of Det(1 - A) across the X1/X2 split

#include <complex>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "jdpp/jop.hpp"

namespace jdpp {

enum class DetMethod { series, direct, block };

std::string_view method_name(DetMethod m);
DetMethod parse_method(std::string_view name);

struct DetReport {
  Complex value{1.0, 0.0};
  DetMethod method = DetMethod::direct;
  // Series only: number of C_n terms summed.
  int terms_used = 0;
  // Series only: bound on the neglected tail. For ||A||_{1|2} < 1 this is
  // ||A||^{N+1} / (1 - ||A||); otherwise 0 when the sum ran to the full
  // dimension (exact) and +inf when it was cut short.
  double truncation_bound = 0.0;
};

// p_1 = Tr(A_even), p_k = Tr(A^k) for k >= 2; returns p_1..p_kmax.
std::vector<Complex> power_traces(const JKernel& a, int k_max);

// C_1..C_{n_max} through the Newton recursion
//   n C_n = sum_{k=1}^{n} (-1)^{k-1} p_k C_{n-k},  C_0 = 1,
// which regroups the signed permutation sum over cycle types.
std::vector<Complex> cycle_coefficients(const JKernel& a, int n_max);

// Truncated series; stops once the tail bound drops below tol (when the
// bound applies), at n_cap, or at the dimension, whichever comes first.
DetReport det_series(const JKernel& a, double tol = 1e-15,
                     int n_cap = std::numeric_limits<int>::max());

DetReport det_direct(const JKernel& a);

// Det((1 + A) e^{-A}) * e^{Tr A_even} with an explicit matrix exponential.
// Identical to det_direct at finite dimension; kept as a cross-check.
Complex det_regularized(const JKernel& a);

// Det(1 - A) = Det(1 - A11) * Det(1 - A22 - A21 (1 - A11)^{-1} A12).
// Requires ||A11|| < 1. For J-Hermitian A with ||A|| < 1 and A11 >= 0 the
// value is checked to be strictly positive.
DetReport det_block(const JKernel& a);

// sgn(phi) sqrt|phi| K sqrt|phi| as a kernel on the same space.
JKernel multiplier_kernel(const JKernel& k, std::span<const double> phi);

struct MultiplierReport {
  Complex value;          // Det(1 + S K S'), S = sgn(phi)sqrt|phi|, S' = sqrt|phi|
  Complex unsymmetrized;  // Det(1 + K phi)
};

// Both forms are evaluated; a disagreement beyond 1e-10 relative throws
// std::logic_error.
MultiplierReport det_multiplier_report(const JKernel& k,
                                       std::span<const double> phi);

inline Complex det_multiplier(const JKernel& k, std::span<const double> phi) {
  return det_multiplier_report(k, phi).value;
}

}  // namespace jdpp
