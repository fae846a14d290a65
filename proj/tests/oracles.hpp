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

// Reference computations for the test suites. Everything here avoids the
// code paths under test: determinants by the Leibniz sum, cycle coefficients
// by summing over permutations, configuration masses by the complement
// formula P(S) = (-1)^{n-|S|} det(K - 1_{X \ S}). Random inputs come from
// std::mt19937_64, not from the library's Philox streams.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "jdpp/jop.hpp"

namespace oracle {

using jdpp::CMatrix;
using jdpp::Complex;

inline CMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows,
                              Eigen::Index cols, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double re = g(rng);
      const double im = g(rng);
      m(r, c) = scale * Complex(re, im);
    }
  }
  return m;
}

inline jdpp::PartitionedSpace random_space(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<jdpp::Part> parts(n);
  for (auto& p : parts) p = coin(rng) ? jdpp::Part::one : jdpp::Part::two;
  return jdpp::PartitionedSpace(std::move(parts));
}

// Haar-ish unitary from QR of a complex Gaussian matrix.
inline CMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  const CMatrix z = random_complex(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(z);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

inline CMatrix hermitian_with_spectrum(std::mt19937_64& rng,
                                       const std::vector<double>& spectrum) {
  const auto n = static_cast<Eigen::Index>(spectrum.size());
  const CMatrix u = random_unitary(rng, n);
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = spectrum[static_cast<std::size_t>(i)];
  CMatrix h = u * d.asDiagonal() * u.adjoint();
  return (h + h.adjoint()) / 2.0;
}

// Random J-Hermitian matrix (not necessarily valid).
inline CMatrix random_j_hermitian(std::mt19937_64& rng,
                                  const jdpp::PartitionedSpace& space,
                                  double scale = 1.0) {
  const auto n = static_cast<Eigen::Index>(space.size());
  CMatrix h = random_complex(rng, n, n, scale);
  h = ((h + h.adjoint()) / 2.0).eval();
  // Negating the X1-row / X2-column block of a Hermitian matrix gives
  // K(x, y) = -conj(K(y, x)) across parts.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (space.part(static_cast<std::size_t>(i)) == jdpp::Part::one &&
          space.part(static_cast<std::size_t>(j)) == jdpp::Part::two) {
        h(i, j) = -h(i, j);
      }
    }
  }
  return h;
}

inline int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// Leibniz formula; fine up to n = 8.
inline Complex leibniz_det(const CMatrix& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1.0;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  Complex sum = 0.0;
  do {
    Complex term = static_cast<double>(permutation_sign(p));
    for (int i = 0; i < n; ++i) term *= m(i, p[static_cast<std::size_t>(i)]);
    sum += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

inline std::vector<int> cycle_lengths(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

// C_k = (1/k!) sum over xi in S_k of sign(xi) prod over cycles eta of
// Tr(A^{|eta|}), with Tr(A) replaced by Tr(A_even).
inline std::vector<Complex> cycle_sum(const CMatrix& a, Complex trace_even,
                                      int k_max) {
  std::vector<Complex> traces(static_cast<std::size_t>(k_max) + 1);
  CMatrix power = CMatrix::Identity(a.rows(), a.cols());
  for (int k = 1; k <= k_max; ++k) {
    // Plain triple loop, independent of Eigen's product kernels.
    CMatrix next = CMatrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index l = 0; l < a.rows(); ++l)
        for (Eigen::Index j = 0; j < a.cols(); ++j) next(i, j) += power(i, l) * a(l, j);
    power = next;
    Complex tr = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) tr += power(i, i);
    traces[static_cast<std::size_t>(k)] = k == 1 ? trace_even : tr;
  }
  std::vector<Complex> c;
  double factorial = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    factorial *= k;
    std::vector<int> p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    Complex sum = 0.0;
    do {
      Complex term = static_cast<double>(permutation_sign(p));
      for (int len : cycle_lengths(p)) term *= traces[static_cast<std::size_t>(len)];
      sum += term;
    } while (std::next_permutation(p.begin(), p.end()));
    c.push_back(sum / factorial);
  }
  return c;
}

// 1 + sum_n (1/n!) sum over all n-tuples of det[A(x_i, x_j)]: the series
// definition of Det(1 + A) with counting measure, every tuple enumerated.
inline Complex tuple_expansion_det(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  Complex total = 1.0;
  double factorial = 1.0;
  for (int k = 1; k <= n; ++k) {
    factorial *= k;
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    Complex sum = 0.0;
    for (;;) {
      CMatrix sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
          sub(r, c) = a(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
      sum += leibniz_det(sub);
      int pos = k - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == n) {
        idx[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    total += sum / factorial;
  }
  return total;
}

// P(gamma = S) = (-1)^{n - |S|} det(K - 1_{X \ S}), by full-pivot LU.
inline std::vector<double> configuration_masses(const CMatrix& k) {
  const auto n = static_cast<std::size_t>(k.rows());
  std::vector<double> out(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < out.size(); ++s) {
    CMatrix m = k;
    int outside = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((s >> i) & 1U)) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -= 1.0;
        ++outside;
      }
    }
    const Complex d = n == 0 ? Complex(1.0) : Eigen::FullPivLU<CMatrix>(m).determinant();
    out[s] = (outside % 2 == 0 ? 1.0 : -1.0) * d.real();
  }
  return out;
}

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace oracle
