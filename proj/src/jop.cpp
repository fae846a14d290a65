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

#include "jdpp/jop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace jdpp {

namespace {

Eigen::VectorXd sqrt_weights(const PartitionedSpace& space) {
  Eigen::VectorXd s(static_cast<Eigen::Index>(space.size()));
  for (std::size_t i = 0; i < space.size(); ++i) {
    s(static_cast<Eigen::Index>(i)) = std::sqrt(space.weight(i));
  }
  return s;
}

CMatrix select(const CMatrix& m, const std::vector<std::size_t>& rows,
               const std::vector<std::size_t>& cols) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(static_cast<Eigen::Index>(rows[r]),
            static_cast<Eigen::Index>(cols[c]));
    }
  }
  return out;
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double nuclear_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::BDCSVD<CMatrix>(m).singularValues().sum();
}

double max_eigenvalue(const CMatrix& hermitian) {
  const auto spec = hermitian_spectrum(hermitian);
  return spec.empty() ? 0.0 : spec.back();
}

}  // namespace

JKernel::JKernel(PartitionedSpace space, CMatrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(space_.size());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw PreconditionError("kernel is " + std::to_string(entries_.rows()) +
                            "x" + std::to_string(entries_.cols()) +
                            " but the space has " + std::to_string(n) +
                            " points");
  }
  if (!entries_.allFinite()) {
    throw PreconditionError("kernel has non-finite entries");
  }
  if (space_.unit_weights()) {
    op_ = entries_;
  } else {
    const Eigen::VectorXd s = sqrt_weights(space_);
    op_ = s.asDiagonal() * entries_ * s.asDiagonal();
  }
}

JKernel JKernel::from_operator(PartitionedSpace space, CMatrix op) {
  if (space.unit_weights()) return JKernel(std::move(space), std::move(op));
  const Eigen::VectorXd inv = sqrt_weights(space).cwiseInverse();
  CMatrix entries = inv.asDiagonal() * op * inv.asDiagonal();
  return JKernel(std::move(space), std::move(entries));
}

CMatrix JKernel::block(Part row, Part col) const {
  return select(op_, space_.indices(row), space_.indices(col));
}

CMatrix JKernel::even() const {
  CMatrix out = op_;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (space_.part(i) != space_.part(j)) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 0.0;
      }
    }
  }
  return out;
}

CMatrix JKernel::odd() const { return op_ - even(); }

double op_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::BDCSVD<CMatrix>(a).singularValues()(0);
}

std::vector<double> hermitian_spectrum(const CMatrix& a) {
  if (a.size() == 0) return {};
  const CMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double j_hermitian_defect(const JKernel& k) {
  const CMatrix k11 = k.block(Part::one, Part::one);
  const CMatrix k22 = k.block(Part::two, Part::two);
  const CMatrix k12 = k.block(Part::one, Part::two);
  const CMatrix k21 = k.block(Part::two, Part::one);
  const CMatrix d11 = k11 - k11.adjoint();
  const CMatrix d22 = k22 - k22.adjoint();
  const CMatrix d12 = k21.adjoint() + k12;
  return std::max({max_abs(d11), max_abs(d22), max_abs(d12)});
}

bool is_j_hermitian(const JKernel& k, double tol) {
  if (tol < 0.0) throw PreconditionError("tolerance must be non-negative");
  return j_hermitian_defect(k) <= tol;
}

JKernel hat(const JKernel& k) {
  CMatrix h = k.matrix();
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k.space().part(j) == Part::two) {
      const auto c = static_cast<Eigen::Index>(j);
      h.col(c) = -h.col(c);
      h(c, c) += 1.0;
    }
  }
  return JKernel::from_operator(k.space(), std::move(h));
}

JKernel with_swapped_parts(const JKernel& k) {
  return JKernel(k.space().swapped(), k.entries());
}

Verdict check_validity(const JKernel& k, std::optional<double> tol) {
  Verdict v;
  const JKernel h = hat(k);
  const double hat_norm = op_norm(h.matrix());
  v.tolerance = tol.value_or(1e-9 * std::max(1.0, hat_norm));
  v.j_defect = j_hermitian_defect(k);
  const double structure_tol =
      tol.value_or(1e-9 * std::max(1.0, max_abs(k.matrix())));
  v.j_hermitian = v.j_defect <= structure_tol;
  v.op_norm_k = op_norm(k.matrix());
  v.op_norm_even = op_norm(k.even());
  if (!v.j_hermitian) {
    v.valid = false;
    v.margin = std::numeric_limits<double>::quiet_NaN();
    return v;
  }

  v.hat_spectrum = hermitian_spectrum(h.matrix());
  if (v.hat_spectrum.empty()) {
    v.margin = 0.0;
    v.valid = true;
  } else {
    const double lo = v.hat_spectrum.front();
    const double hi = v.hat_spectrum.back();
    v.margin = std::min(lo, 1.0 - hi);
    v.valid = lo >= -v.tolerance && hi <= 1.0 + v.tolerance;
  }

  const double n11 = op_norm(k.block(Part::one, Part::one));
  const double n22 = op_norm(k.block(Part::two, Part::two));
  if (n11 < 1.0 - 1e-12 && n22 < 1.0 - 1e-12) {
    try {
      const bool lower = schur_check(k, v.tolerance);
      const bool upper = schur_check(with_swapped_parts(k), v.tolerance);
      v.schur_consistent = (lower && upper) == v.valid;
    } catch (const PreconditionError&) {
      // 1 - K22 indefinite although ||K22|| < 1: K22 is not Hermitian
      // enough for the Schur route; leave unset.
    }
  }
  return v;
}

SchurReport schur_complement(const JKernel& k, double tol) {
  const CMatrix k11 = k.block(Part::one, Part::one);
  const CMatrix k21 = k.block(Part::two, Part::one);
  const CMatrix k22 = k.block(Part::two, Part::two);
  SchurReport r;
  CMatrix q11 = (k11 + k11.adjoint()) / 2.0;
  if (k22.size() != 0) {
    CMatrix one_minus = CMatrix::Identity(k22.rows(), k22.cols()) - k22;
    one_minus = ((one_minus + one_minus.adjoint()) / 2.0).eval();
    Eigen::LLT<CMatrix> llt(one_minus);
    const auto spec = hermitian_spectrum(one_minus);
    if (llt.info() != Eigen::Success || spec.front() <= 0.0) {
      throw PreconditionError(
          "schur_check: 1 - K22 is not positive definite (need ||K22|| < 1)");
    }
    q11 -= k21.adjoint() * llt.solve(k21);
    q11 = ((q11 + q11.adjoint()) / 2.0).eval();
  }
  r.q11 = q11;
  const auto spec = hermitian_spectrum(q11);
  r.min_eigenvalue = spec.empty() ? 0.0 : spec.front();
  r.positive = r.min_eigenvalue >= -tol;
  return r;
}

bool schur_check(const JKernel& k, double tol) {
  return schur_complement(k, tol).positive;
}

Norms norms(const JKernel& k) {
  Norms n;
  n.op = op_norm(k.matrix());
  n.hs = k.matrix().norm();
  n.trace_even = nuclear_norm(k.block(Part::one, Part::one)) +
                 nuclear_norm(k.block(Part::two, Part::two));
  n.norm_1_2 = std::max(n.hs, n.trace_even);
  return n;
}

JKernel restrict(const JKernel& k, const IndexWindow& delta) {
  k.space().check(delta);
  const std::vector<std::size_t> idx(delta.begin(), delta.end());
  return JKernel(k.space().subspace(delta), select(k.entries(), idx, idx));
}

LTransform l_transform(const JKernel& k) {
  const auto n = static_cast<Eigen::Index>(k.size());
  LTransform out;
  if (n == 0) {
    out.l = k;
    out.condition = 1.0;
    return out;
  }
  const CMatrix one_minus = CMatrix::Identity(n, n) - k.matrix();
  Eigen::PartialPivLU<CMatrix> lu(one_minus);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw SingularMatrix("l_transform: 1 - K is singular (rcond = " +
                         std::to_string(rcond) + ")");
  }
  out.condition = 1.0 / rcond;
  // K and (1 - K)^{-1} commute.
  out.l = JKernel::from_operator(k.space(), lu.solve(k.matrix()));
  return out;
}

NormIdentity norm_identity_check(const JKernel& k) {
  NormIdentity r;
  r.lhs = op_norm(k.matrix());
  CMatrix shifted = hat(k).matrix();
  for (std::size_t i : k.space().indices(Part::two)) {
    const auto d = static_cast<Eigen::Index>(i);
    shifted(d, d) -= 1.0;
  }
  r.rhs = op_norm(shifted);
  return r;
}

NormAttainment norm_attainment(const JKernel& k, double tol) {
  NormAttainment r;
  r.norm = op_norm(k.matrix());
  r.norm_even = op_norm(k.even());
  r.norm_is_one = std::abs(r.norm - 1.0) <= tol;
  r.even_is_one = std::abs(r.norm_even - 1.0) <= tol;
  r.k11_attains =
      std::abs(max_eigenvalue(k.block(Part::one, Part::one)) - 1.0) <= tol;
  r.k22_attains =
      std::abs(max_eigenvalue(k.block(Part::two, Part::two)) - 1.0) <= tol;
  return r;
}

}  // namespace jdpp
