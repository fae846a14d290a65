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

#include "jdpp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>
#include <Eigen/QR>

#include "jdpp/rng.hpp"

namespace jdpp {

namespace {

constexpr double kAssertTol = 1e-10;

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void expect_close(const CMatrix& got, const CMatrix& want, const char* what) {
  const double scale = std::max(1.0, max_abs(want));
  if (max_abs(got - want) > kAssertTol * scale) {
    throw std::logic_error(std::string("from_G: ") + what);
  }
}

CMatrix embed(const PartitionedSpace& space, const CMatrix& blk, Part row,
              Part col, CMatrix out) {
  const auto rows = space.indices(row);
  const auto cols = space.indices(col);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c])) =
          blk(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

}  // namespace

JKernel from_G(const PartitionedSpace& space, const GOperator& g) {
  const auto n1 = static_cast<Eigen::Index>(space.count(Part::one));
  const auto n2 = static_cast<Eigen::Index>(space.count(Part::two));
  if (g.g.rows() != n2 || g.g.cols() != n1) {
    throw PreconditionError("G must be n2 x n1 = " + std::to_string(n2) + "x" +
                            std::to_string(n1) + ", got " +
                            std::to_string(g.g.rows()) + "x" +
                            std::to_string(g.g.cols()));
  }
  if (!g.g.allFinite()) throw PreconditionError("G has non-finite entries");
  const auto n = static_cast<Eigen::Index>(space.size());
  const CMatrix& gm = g.g;
  const CMatrix gs = gm.adjoint();

  CMatrix l = CMatrix::Zero(n, n);
  l = embed(space, gm, Part::two, Part::one, std::move(l));
  l = embed(space, -gs, Part::one, Part::two, std::move(l));

  const CMatrix one_plus = CMatrix::Identity(n, n) + l;
  Eigen::PartialPivLU<CMatrix> lu(one_plus);
  if (n != 0 && !(lu.rcond() > 1e-14)) {
    throw SingularMatrix("from_G: 1 + L is numerically singular");
  }
  // L and (1 + L)^{-1} commute.
  const JKernel k =
      JKernel::from_operator(space, n == 0 ? CMatrix(0, 0) : CMatrix(lu.solve(l)));

  const CMatrix i1 = CMatrix::Identity(n1, n1);
  const CMatrix i2 = CMatrix::Identity(n2, n2);
  const CMatrix inv1 = (i1 + gs * gm).inverse();
  const CMatrix inv2 = (i2 + gm * gs).inverse();
  expect_close(k.block(Part::one, Part::one), gs * gm * inv1, "K11 != G*G(1+G*G)^-1");
  expect_close(k.block(Part::two, Part::two), gm * gs * inv2, "K22 != GG*(1+GG*)^-1");
  expect_close(k.block(Part::two, Part::one), gm * inv1, "K21 != G(1+G*G)^-1");
  expect_close(k.block(Part::one, Part::two), -gs * inv2, "K12 != -G*(1+GG*)^-1");
  if (!is_j_hermitian(k, kAssertTol * std::max(1.0, max_abs(k.matrix())))) {
    throw std::logic_error("from_G: result is not J-Hermitian");
  }

  const CMatrix p = hat(k).matrix();
  expect_close(p * p, p, "hat(K) is not idempotent");
  expect_close(p.adjoint(), p, "hat(K) is not self-adjoint");
  // Basis images G^* e_u + e_u are fixed.
  const auto x1 = space.indices(Part::one);
  const auto x2 = space.indices(Part::two);
  CMatrix graph = CMatrix::Zero(n, n2);
  for (Eigen::Index u = 0; u < n2; ++u) {
    for (Eigen::Index r = 0; r < n1; ++r) {
      graph(static_cast<Eigen::Index>(x1[static_cast<std::size_t>(r)]), u) = gs(r, u);
    }
    graph(static_cast<Eigen::Index>(x2[static_cast<std::size_t>(u)]), u) = 1.0;
  }
  expect_close(p * graph, graph, "hat(K) does not fix the graph of -G");
  return k;
}

JKernel from_G(const GOperator& g) {
  return from_G(PartitionedSpace::split(static_cast<std::size_t>(g.g.cols()),
                                        static_cast<std::size_t>(g.g.rows())),
                g);
}

CMatrix random_hermitian(std::size_t n, const RandomSpec& spec,
                         std::uint64_t seed) {
  const std::size_t rank = spec.rank.value_or(n);
  if (rank > n) {
    throw PreconditionError("random_valid: rank " + std::to_string(rank) +
                            " exceeds n = " + std::to_string(n));
  }
  if (!spec.projection && !(spec.norm_cap > 0.0 && spec.norm_cap <= 1.0)) {
    throw PreconditionError("random_valid: norm_cap must lie in (0, 1]");
  }
  const auto m = static_cast<Eigen::Index>(n);
  if (m == 0) return CMatrix(0, 0);

  PhiloxStream rng(seed, stream_tag::kernels, 0);
  CMatrix z(m, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < m; ++r) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  const CMatrix& rr = qr.matrixQR();
  for (Eigen::Index c = 0; c < m; ++c) {
    const double a = std::abs(rr(c, c));
    if (a > 0.0) q.col(c) *= rr(c, c) / a;
  }

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  for (std::size_t i = 0; i < rank; ++i) {
    lambda(static_cast<Eigen::Index>(i)) =
        spec.projection ? 1.0 : spec.norm_cap * rng.uniform();
  }
  CMatrix h = q * lambda.cast<Complex>().asDiagonal() * q.adjoint();
  return (h + h.adjoint()) / 2.0;
}

JKernel random_valid(const PartitionedSpace& space, const RandomSpec& spec,
                     std::uint64_t seed) {
  return hat(JKernel::from_operator(space,
                                    random_hermitian(space.size(), spec, seed)));
}

Discretization discretize(const ContinuousKernelSpec& spec) {
  const std::size_t n = spec.points_per_part;
  if (n == 0) throw PreconditionError("discretize: points_per_part must be >= 1");
  auto rule = [&](Interval iv) {
    return spec.quadrature == Quadrature::midpoint ? midpoint_rule(iv, n)
                                                   : gauss_legendre_rule(iv, n);
  };
  const QuadratureRule r1 = rule(spec.part1);
  std::vector<Part> parts(n, Part::one);
  std::vector<double> nodes = r1.nodes;
  std::vector<double> weights = r1.weights;
  if (spec.part2) {
    const QuadratureRule r2 = rule(*spec.part2);
    parts.insert(parts.end(), n, Part::two);
    nodes.insert(nodes.end(), r2.nodes.begin(), r2.nodes.end());
    weights.insert(weights.end(), r2.weights.begin(), r2.weights.end());
  }

  const std::size_t total = parts.size();
  CMatrix m(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      const bool a1 = parts[i] == Part::one;
      const bool b1 = parts[j] == Part::one;
      const BlockFunction& f =
          a1 ? (b1 ? spec.k11 : spec.k12) : (b1 ? spec.k21 : spec.k22);
      Complex v = f ? f(nodes[i], nodes[j]) : Complex(0.0);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw PreconditionError("discretize: kernel is not finite at (" +
                                std::to_string(nodes[i]) + ", " +
                                std::to_string(nodes[j]) + ")");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::sqrt(weights[i]) * v * std::sqrt(weights[j]);
    }
  }

  Discretization d{
      JKernel(PartitionedSpace(std::move(parts)).with_coordinates(nodes),
              std::move(m)),
      std::move(weights), 0.0, false};
  d.j_defect = j_hermitian_defect(d.kernel);
  d.j_hermitian = d.j_defect <= 1e-8;
  return d;
}

}  // namespace jdpp
