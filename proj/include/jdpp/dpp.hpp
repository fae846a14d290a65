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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jdpp/jop.hpp"

namespace jdpp {

inline constexpr std::size_t kDefaultEnumerationCap = 14;

struct QueryTag {};
// Distinct points x_1..x_k of a correlation function k^(k).
using CorrelationQuery = IndexSet<QueryTag>;

// Probability mass of every configuration of a small ground set, indexed by
// bitmask (bit i set iff point i is present).
class DistributionTable {
 public:
  DistributionTable() = default;
  DistributionTable(PartitionedSpace space, std::vector<double> masses,
                    std::size_t clamped = 0, double most_negative = 0.0);

  const PartitionedSpace& space() const { return space_; }
  std::size_t points() const { return space_.size(); }
  std::span<const double> masses() const { return masses_; }
  double probability(std::uint64_t mask) const { return masses_.at(mask); }
  double probability(const Configuration& gamma) const;
  double total() const;

  // Masses that came out of the inversion in [-1e-6, 0) and were set to 0.
  std::size_t clamped() const { return clamped_; }
  double most_negative() const { return most_negative_; }

 private:
  PartitionedSpace space_;
  std::vector<double> masses_;
  std::size_t clamped_ = 0;
  double most_negative_ = 0.0;
};

// Throws InvalidKernel unless check_validity passes.
Verdict require_valid(const JKernel& k);

// det K[q, q] times the weights of the query points (i.e. the principal minor
// of the operator matrix). Throws InvalidKernel for invalid kernels.
double correlation(const JKernel& k, const CorrelationQuery& q);

// rho(T) = det K[T, T] for every subset T (real parts; a J-Hermitian
// kernel has real principal minors). No validity check.
std::vector<double> principal_minors(const JKernel& k,
                                     std::size_t cap = kDefaultEnumerationCap);

// Moebius inversion P(S) = sum_{T ⊇ S} (-1)^{|T \ S|} rho(T), without any
// validity check or clamping. For an invalid kernel some masses are negative.
std::vector<double> signed_masses(const JKernel& k,
                                  std::size_t cap = kDefaultEnumerationCap);

// The point process of a valid kernel as an explicit table. Masses in
// [-1e-6, 0) are clamped to 0 (counted in clamped()); anything more negative
// throws InvalidKernel.
DistributionTable exact_distribution(const JKernel& k,
                                     std::size_t cap = kDefaultEnumerationCap);

// Law of gamma ∩ Delta, over the subspace induced by the window.
DistributionTable marginalize(const DistributionTable& table,
                              const IndexWindow& delta);

// P(gamma ⊇ T) for every T: superset sums of the table.
std::vector<double> inclusion_probabilities(const DistributionTable& table);

// Push-forward of a table under the particle-hole involution.
DistributionTable complement_image(const DistributionTable& table);

double total_variation(const DistributionTable& a, const DistributionTable& b);

// Local densities on a window from L[Delta] = K^Delta (1 - K^Delta)^{-1}:
// mass(S) = Det(1 - K^Delta) det L[Delta][S, S]. Requires ||K^Delta|| < 1;
// otherwise throws PreconditionError (use exact_distribution, or thin the
// kernel first).
DistributionTable densities_via_l(const JKernel& k, const IndexWindow& delta,
                                  std::size_t cap = kDefaultEnumerationCap);

// E[prod_{x in gamma} (1 + phi(x))] as Det(1 + sgn(phi)sqrt|phi| K sqrt|phi|).
double bogoliubov(const JKernel& k, std::span<const double> phi);

struct VoidReport {
  double value = 1.0;       // reported probability of no points in Delta
  double raw_det = 1.0;     // Det(1 - K^Delta) as computed
  double window_norm = 0.0; // ||K^Delta||
  bool norm_one = false;    // ||K^Delta|| = 1 within tol; value forced to 0
};

VoidReport void_probability(const JKernel& k, const IndexWindow& delta,
                            double tol = 1e-9);

// K-hat, the correlation kernel of the complemented process.
JKernel pushforward_complement(const JKernel& k);

// eps * K, for 0 < eps <= 1. Validity is preserved since
// hat(eps K) = eps hat(K) + (1 - eps) P2.
JKernel thin(const JKernel& k, double eps);

}  // namespace jdpp
