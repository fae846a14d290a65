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

#include "jdpp/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

namespace jdpp {

namespace {

Complex lu_det(const CMatrix& m) {
  if (m.size() == 0) return {1.0, 0.0};
  return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

CMatrix identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return CMatrix::Identity(k, k);
}

}  // namespace

std::string_view method_name(DetMethod m) {
  switch (m) {
    case DetMethod::series:
      return "series";
    case DetMethod::direct:
      return "direct";
    case DetMethod::block:
      return "block";
  }
  return "direct";
}

DetMethod parse_method(std::string_view name) {
  if (name == "series") return DetMethod::series;
  if (name == "direct") return DetMethod::direct;
  if (name == "block") return DetMethod::block;
  throw PreconditionError("unknown determinant method '" + std::string(name) +
                          "' (series, direct, block)");
}

std::vector<Complex> power_traces(const JKernel& a, int k_max) {
  std::vector<Complex> p;
  if (k_max < 1) return p;
  p.reserve(static_cast<std::size_t>(k_max));
  const CMatrix& m = a.matrix();
  const Complex even_trace = a.even().trace();
  // The odd part has no diagonal, so this is the ordinary trace.
  if (even_trace != m.trace()) {
    throw std::logic_error("Tr(A_even) differs from Tr(A)");
  }
  p.push_back(even_trace);
  CMatrix power = m;
  for (int k = 2; k <= k_max; ++k) {
    power = power * m;
    p.push_back(power.trace());
  }
  return p;
}

std::vector<Complex> cycle_coefficients(const JKernel& a, int n_max) {
  if (n_max < 1) throw PreconditionError("cycle_coefficients: n_max < 1");
  const std::vector<Complex> p = power_traces(a, n_max);
  std::vector<Complex> c(static_cast<std::size_t>(n_max) + 1);
  c[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    Complex acc = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      acc += sign * p[static_cast<std::size_t>(k - 1)] *
             c[static_cast<std::size_t>(n - k)];
    }
    c[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
  }
  return {c.begin() + 1, c.end()};
}

DetReport det_series(const JKernel& a, double tol, int n_cap) {
  if (n_cap < 1) throw PreconditionError("det_series: n_cap < 1");
  DetReport r;
  r.method = DetMethod::series;
  const int dim = static_cast<int>(a.size());
  if (dim == 0) return r;

  const double norm = norms(a).norm_1_2;
  const int hard_cap = std::min(n_cap, dim);
  int terms = hard_cap;
  if (norm < 1.0) {
    // Smallest N with ||A||^{N+1} / (1 - ||A||) <= tol.
    terms = 1;
    double tail = std::pow(norm, 2) / (1.0 - norm);
    while (tail > tol && terms < hard_cap) {
      ++terms;
      tail *= norm;
    }
    // Coefficients past the dimension vanish, so reaching it is exact.
    r.truncation_bound =
        terms >= dim ? 0.0 : std::pow(norm, terms + 1) / (1.0 - norm);
  } else {
    r.truncation_bound =
        terms >= dim ? 0.0 : std::numeric_limits<double>::infinity();
  }

  const std::vector<Complex> c = cycle_coefficients(a, terms);
  Complex sum = 1.0;
  for (const Complex& term : c) sum += term;
  r.value = sum;
  r.terms_used = terms;
  return r;
}

DetReport det_direct(const JKernel& a) {
  DetReport r;
  r.method = DetMethod::direct;
  if (a.odd().trace() != Complex(0.0, 0.0)) {
    throw std::logic_error("odd part has a nonzero trace");
  }
  r.value = lu_det(identity(a.size()) + a.matrix());
  return r;
}

Complex det_regularized(const JKernel& a) {
  if (a.size() == 0) return {1.0, 0.0};
  const CMatrix& m = a.matrix();
  const CMatrix minus = -m;
  const CMatrix e = minus.exp();
  const CMatrix regular = (identity(a.size()) + m) * e;
  return lu_det(regular) * std::exp(a.even().trace());
}

DetReport det_block(const JKernel& a) {
  DetReport r;
  r.method = DetMethod::block;
  const CMatrix a11 = a.block(Part::one, Part::one);
  const CMatrix a12 = a.block(Part::one, Part::two);
  const CMatrix a21 = a.block(Part::two, Part::one);
  const CMatrix a22 = a.block(Part::two, Part::two);

  Complex det11 = 1.0;
  CMatrix schur = identity(static_cast<std::size_t>(a22.rows())) - a22;
  if (a11.size() != 0) {
    const double n11 = op_norm(a11);
    if (!(n11 < 1.0)) {
      throw PreconditionError("det_block: ||A11|| = " + std::to_string(n11) +
                              " is not below 1");
    }
    const CMatrix one_minus = identity(static_cast<std::size_t>(a11.rows())) - a11;
    Eigen::PartialPivLU<CMatrix> lu(one_minus);
    if (!(lu.rcond() > 1e-14)) {
      throw SingularMatrix("det_block: 1 - A11 is singular");
    }
    det11 = lu.determinant();
    if (a22.size() != 0) schur -= a21 * lu.solve(a12);
  }
  r.value = det11 * lu_det(schur);

  // Strict positivity under the J-Hermitian hypotheses.
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  if (a.size() != 0 && is_j_hermitian(a, 1e-12 * scale) &&
      op_norm(a.matrix()) < 1.0) {
    const auto spec11 = hermitian_spectrum(a11);
    if (spec11.empty() || spec11.front() >= 0.0) {
      if (!(r.value.real() > 0.0) ||
          std::abs(r.value.imag()) > 1e-9 * (1.0 + std::abs(r.value.real()))) {
        throw std::logic_error("det_block: Det(1 - A) not positive under "
                               "the J-Hermitian contraction hypotheses");
      }
    }
  }
  return r;
}

JKernel multiplier_kernel(const JKernel& k, std::span<const double> phi) {
  if (phi.size() != k.size()) {
    throw PreconditionError("multiplier has " + std::to_string(phi.size()) +
                            " values for " + std::to_string(k.size()) +
                            " points");
  }
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::VectorXd left(n), right(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = phi[static_cast<std::size_t>(i)];
    if (!std::isfinite(f)) throw PreconditionError("multiplier is not finite");
    const double root = std::sqrt(std::abs(f));
    right(i) = root;
    left(i) = f < 0.0 ? -root : root;
  }
  return JKernel::from_operator(
      k.space(), left.asDiagonal() * k.matrix() * right.asDiagonal());
}

MultiplierReport det_multiplier_report(const JKernel& k,
                                       std::span<const double> phi) {
  MultiplierReport r;
  r.value = det_direct(multiplier_kernel(k, phi)).value;
  const auto n = static_cast<Eigen::Index>(k.size());
  const Eigen::Map<const Eigen::VectorXd> phi_vec(phi.data(), n);
  r.unsymmetrized =
      lu_det(identity(k.size()) + k.matrix() * phi_vec.asDiagonal());
  const double scale =
      std::max({1.0, std::abs(r.value), std::abs(r.unsymmetrized)});
  if (std::abs(r.value - r.unsymmetrized) > 1e-10 * scale) {
    throw std::logic_error("det_multiplier: symmetrized and plain forms "
                           "disagree beyond 1e-10");
  }
  return r;
}

}  // namespace jdpp
