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

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "jdpp/jop.hpp"
#include "jdpp/quadrature.hpp"

namespace jdpp {

// G : L^2(X1) -> L^2(X2), an n2 x n1 operator matrix.
struct GOperator {
  CMatrix g;
};

// K = L (1 + L)^{-1} with L mapping X1 -> X2 by G and X2 -> X1 by -G^*.
// The block formulas, J-Hermiticity and the projection property of K-hat
// are asserted (std::logic_error on failure). K-hat projects onto
// {G^* u + u : u in L^2(X2)}, a subspace of dimension n2.
JKernel from_G(const PartitionedSpace& space, const GOperator& g);

// On the default space: n1 points of X1 then n2 points of X2.
JKernel from_G(const GOperator& g);

struct RandomSpec {
  // Number of nonzero eigenvalues of H; all n when unset.
  std::optional<std::size_t> rank;
  // H is then a rank-r orthogonal projection.
  bool projection = false;
  // Eigenvalues of H are uniform on [0, norm_cap].
  double norm_cap = 1.0;
};

// Random Hermitian matrix V diag(lambda) V^* with V Haar-distributed
// (QR of a complex Gaussian matrix, phases fixed). Pure function of seed.
CMatrix random_hermitian(std::size_t n, const RandomSpec& spec,
                         std::uint64_t seed);

// hat(H) for the H above, read as an operator on `space`. Valid by
// construction, since hat is an involution.
JKernel random_valid(const PartitionedSpace& space, const RandomSpec& spec,
                     std::uint64_t seed);

enum class Quadrature { midpoint, gauss_legendre };

using BlockFunction = std::function<Complex(double, double)>;

// A kernel on X1 = part1 and (optionally) X2 = part2 given by its four
// block functions; k_ab(x, y) is evaluated for x in part a, y in part b.
// Missing blocks are zero.
struct ContinuousKernelSpec {
  Interval part1;
  std::optional<Interval> part2;
  BlockFunction k11, k12, k21, k22;
  Quadrature quadrature = Quadrature::midpoint;
  std::size_t points_per_part = 64;
};

struct Discretization {
  // Entries sqrt(w_i) k(x_i, x_j) sqrt(w_j) on a unit-weight space whose
  // coordinates are the nodes.
  JKernel kernel;
  std::vector<double> weights;
  double j_defect = 0.0;
  bool j_hermitian = false;  // j_defect <= 1e-8
};

// Throws PreconditionError on non-finite evaluations.
Discretization discretize(const ContinuousKernelSpec& spec);

}  // namespace jdpp
