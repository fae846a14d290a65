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

#include "jdpp/dpp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "jdpp/fredholm.hpp"
#include "jdpp/simd.hpp"

namespace jdpp {

namespace {

constexpr double kClampFloor = -1e-6;

void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (cap > 30) throw PreconditionError("enumeration cap above 30");
  if (n > cap) {
    throw PreconditionError(std::string(what) + ": " + std::to_string(n) +
                            " points exceed the enumeration cap " +
                            std::to_string(cap));
  }
}

std::vector<std::size_t> mask_members(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1U) out.push_back(i);
  }
  return out;
}

Complex minor(const CMatrix& m, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return {1.0, 0.0};
  const auto k = static_cast<Eigen::Index>(idx.size());
  CMatrix sub(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      sub(r, c) = m(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(r)]),
                    static_cast<Eigen::Index>(idx[static_cast<std::size_t>(c)]));
    }
  }
  if (k == 1) return sub(0, 0);
  return Eigen::PartialPivLU<CMatrix>(sub).determinant();
}

std::vector<double> all_minors(const CMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> rho(size);
  for (std::size_t t = 0; t < size; ++t) {
    rho[t] = minor(m, mask_members(t)).real();
  }
  return rho;
}

// Clamp roundoff-level negatives; reject real negatives.
DistributionTable finalize(PartitionedSpace space, std::vector<double> masses,
                           const char* what) {
  std::size_t clamped = 0;
  double most_negative = 0.0;
  for (double& p : masses) {
    if (p < 0.0) {
      most_negative = std::min(most_negative, p);
      if (p < kClampFloor) {
        throw InvalidKernel(std::string(what) + ": configuration mass " +
                            std::to_string(p) +
                            " below -1e-6; the kernel does not define a "
                            "point process");
      }
      p = 0.0;
      ++clamped;
    }
  }
  return DistributionTable(std::move(space), std::move(masses), clamped,
                           most_negative);
}

}  // namespace

DistributionTable::DistributionTable(PartitionedSpace space,
                                     std::vector<double> masses,
                                     std::size_t clamped, double most_negative)
    : space_(std::move(space)),
      masses_(std::move(masses)),
      clamped_(clamped),
      most_negative_(most_negative) {
  if (space_.size() > 30 || masses_.size() != (std::size_t{1} << space_.size())) {
    throw PreconditionError("distribution table needs 2^n masses");
  }
}

double DistributionTable::probability(const Configuration& gamma) const {
  space_.check(gamma);
  return masses_.at(gamma.mask());
}

double DistributionTable::total() const {
  return std::accumulate(masses_.begin(), masses_.end(), 0.0);
}

Verdict require_valid(const JKernel& k) {
  Verdict v = check_validity(k);
  if (!v.valid) {
    if (!v.j_hermitian) {
      throw InvalidKernel("kernel is not J-Hermitian (defect " +
                          std::to_string(v.j_defect) + ")");
    }
    throw InvalidKernel("hat spectrum leaves [0, 1] (margin " +
                        std::to_string(v.margin) + ")");
  }
  return v;
}

double correlation(const JKernel& k, const CorrelationQuery& q) {
  require_valid(k);
  if (!q.empty() && q.members().back() >= k.size()) {
    throw PreconditionError("correlation query index out of bounds");
  }
  const std::vector<std::size_t> idx(q.begin(), q.end());
  const Complex d = minor(k.matrix(), idx);
  const double scale = std::max(1.0, std::abs(d));
  if (std::abs(d.imag()) > 1e-9 * scale) {
    throw std::logic_error("correlation determinant has imaginary part " +
                           std::to_string(d.imag()));
  }
  double value = d.real();
  if (value < 0.0 && value >= -1e-9) value = 0.0;
  return value;
}

std::vector<double> principal_minors(const JKernel& k, std::size_t cap) {
  check_cap(k.size(), cap, "principal_minors");
  return all_minors(k.matrix());
}

std::vector<double> signed_masses(const JKernel& k, std::size_t cap) {
  std::vector<double> f = principal_minors(k, cap);
  simd::superset_mobius(f, k.size());
  return f;
}

DistributionTable exact_distribution(const JKernel& k, std::size_t cap) {
  check_cap(k.size(), cap, "exact_distribution");
  require_valid(k);
  DistributionTable t =
      finalize(k.space(), signed_masses(k, cap), "exact_distribution");
  if (std::abs(t.total() - 1.0) > 1e-9) {
    throw std::logic_error("exact_distribution: masses sum to " +
                           std::to_string(t.total()));
  }
  return t;
}

DistributionTable marginalize(const DistributionTable& table,
                              const IndexWindow& delta) {
  table.space().check(delta);
  const std::vector<std::size_t> idx(delta.begin(), delta.end());
  std::vector<double> out(std::size_t{1} << idx.size(), 0.0);
  const auto masses = table.masses();
  for (std::uint64_t s = 0; s < masses.size(); ++s) {
    std::uint64_t local = 0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if ((s >> idx[j]) & 1U) local |= std::uint64_t{1} << j;
    }
    out[local] += masses[s];
  }
  return DistributionTable(table.space().subspace(delta), std::move(out));
}

std::vector<double> inclusion_probabilities(const DistributionTable& table) {
  std::vector<double> f(table.masses().begin(), table.masses().end());
  simd::superset_zeta(f, table.points());
  return f;
}

DistributionTable complement_image(const DistributionTable& table) {
  const auto masses = table.masses();
  std::vector<double> out(masses.size(), 0.0);
  for (std::uint64_t s = 0; s < masses.size(); ++s) {
    out[complement_mask(table.space(), s)] = masses[s];
  }
  return DistributionTable(table.space(), std::move(out), table.clamped(),
                           table.most_negative());
}

double total_variation(const DistributionTable& a,
                       const DistributionTable& b) {
  if (a.masses().size() != b.masses().size()) {
    throw PreconditionError("total_variation: tables of different size");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.masses().size(); ++i) {
    sum += std::abs(a.masses()[i] - b.masses()[i]);
  }
  return 0.5 * sum;
}

DistributionTable densities_via_l(const JKernel& k, const IndexWindow& delta,
                                  std::size_t cap) {
  require_valid(k);
  check_cap(delta.size(), cap, "densities_via_l");
  const JKernel local = restrict(k, delta);
  const double norm = op_norm(local.matrix());
  if (!(norm < 1.0 - 1e-12)) {
    throw PreconditionError(
        "densities_via_l: ||K^Delta|| = " + std::to_string(norm) +
        " is not below 1; the density formula needs a strict contraction. "
        "Use exact_distribution, or thin the kernel (thin --eps) first");
  }
  const LTransform lt = l_transform(local);
  const auto m = static_cast<Eigen::Index>(local.size());
  const Complex void_det =
      m == 0 ? Complex(1.0)
             : Eigen::PartialPivLU<CMatrix>(CMatrix::Identity(m, m) -
                                            local.matrix())
                   .determinant();
  std::vector<double> masses = all_minors(lt.l.matrix());
  for (double& p : masses) p *= void_det.real();
  return finalize(local.space(), std::move(masses), "densities_via_l");
}

double bogoliubov(const JKernel& k, std::span<const double> phi) {
  require_valid(k);
  const Complex v = det_multiplier(k, phi);
  if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real()))) {
    throw std::logic_error("bogoliubov functional has imaginary part " +
                           std::to_string(v.imag()));
  }
  return v.real();
}

VoidReport void_probability(const JKernel& k, const IndexWindow& delta,
                            double tol) {
  require_valid(k);
  VoidReport r;
  if (delta.empty()) return r;
  const JKernel local = restrict(k, delta);
  const auto m = static_cast<Eigen::Index>(local.size());
  r.window_norm = op_norm(local.matrix());
  r.raw_det = Eigen::PartialPivLU<CMatrix>(CMatrix::Identity(m, m) -
                                           local.matrix())
                  .determinant()
                  .real();
  r.norm_one = std::abs(r.window_norm - 1.0) <= tol;
  r.value = r.norm_one ? 0.0 : std::max(0.0, r.raw_det);
  return r;
}

JKernel pushforward_complement(const JKernel& k) {
  require_valid(k);
  return hat(k);
}

JKernel thin(const JKernel& k, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw PreconditionError("thin: eps must lie in (0, 1]");
  }
  JKernel out(k.space(), eps * k.entries());
  const auto n = static_cast<Eigen::Index>(k.size());
  CMatrix expected = eps * hat(k).matrix();
  for (std::size_t i : k.space().indices(Part::two)) {
    const auto d = static_cast<Eigen::Index>(i);
    expected(d, d) += 1.0 - eps;
  }
  const double scale = n == 0 ? 1.0 : std::max(1.0, expected.cwiseAbs().maxCoeff());
  if (n != 0 &&
      (hat(out).matrix() - expected).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::logic_error("thin: hat(eps K) != eps hat(K) + (1 - eps) P2");
  }
  return out;
}

}  // namespace jdpp
