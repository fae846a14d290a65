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

// J-operator algebra on finite matrices.
//
// Layout convention: entry (i, j) holds K(x_i, x_j). The block K_ab collects
// rows in part a and columns in part b, so it maps part b into part a
// (K_12 : X2 -> X1, K_21 : X1 -> X2). With this reading the J-Hermitian
// conditions are K_11^* = K_11, K_22^* = K_22, K_21^* = -K_12, which is the
// entrywise condition K(x,y) = -conj(K(y,x)) for x in X1, y in X2.

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "jdpp/space.hpp"

namespace jdpp {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// A complex kernel matrix bound to a partitioned space.
//
// entries() are the kernel values K(x_i, x_j). matrix() is the matrix of the
// integral operator on L^2(X, m) in the orthonormal basis e_i / sqrt(w_i),
// i.e. sqrt(W) K sqrt(W). Every operator-level computation (hat, norms,
// spectra, determinants) works on matrix(); for unit weights the two agree.
// J-Hermiticity is a checked property, not an invariant.
class JKernel {
 public:
  JKernel() = default;
  JKernel(PartitionedSpace space, CMatrix entries);

  // Build from the operator matrix instead of the kernel values.
  static JKernel from_operator(PartitionedSpace space, CMatrix op);

  const PartitionedSpace& space() const { return space_; }
  const CMatrix& entries() const { return entries_; }
  const CMatrix& matrix() const { return op_; }
  std::size_t size() const { return space_.size(); }

  // Operator block mapping part `col` into part `row`.
  CMatrix block(Part row, Part col) const;

  // Block-diagonal and block-off-diagonal parts, full size.
  CMatrix even() const;
  CMatrix odd() const;

 private:
  PartitionedSpace space_;
  CMatrix entries_;
  CMatrix op_;
};

// Largest singular value; 0 for an empty matrix.
double op_norm(const CMatrix& a);

// Ascending eigenvalues of (A + A^*) / 2.
std::vector<double> hermitian_spectrum(const CMatrix& a);

// max-norm defects of the three J-Hermitian block conditions.
double j_hermitian_defect(const JKernel& k);

bool is_j_hermitian(const JKernel& k, double tol);

// K P1 + (1 - K) P2. An involution; J-Hermitian <-> Hermitian.
JKernel hat(const JKernel& k);

// The same kernel on the space with X1 and X2 exchanged.
JKernel with_swapped_parts(const JKernel& k);

struct Verdict {
  bool j_hermitian = false;
  double j_defect = 0.0;
  // Ascending spectrum of the Hermitian part of K-hat. Empty when the
  // structural test fails.
  std::vector<double> hat_spectrum;
  bool valid = false;
  // min(lambda_min, 1 - lambda_max); NaN when the structure test failed.
  double margin = 0.0;
  double tolerance = 0.0;
  double op_norm_k = 0.0;
  double op_norm_even = 0.0;
  // Whether the two Schur-complement tests reproduce `valid`; only set
  // when both apply (||K_11|| < 1 and ||K_22|| < 1).
  std::optional<bool> schur_consistent;
};

// Default tolerance 1e-9 * max(1, ||K-hat||).
Verdict check_validity(const JKernel& k, std::optional<double> tol = {});

struct SchurReport {
  bool positive = false;
  double min_eigenvalue = 0.0;
  CMatrix q11;
};

// Hermitian Schur complement Q11 = K11 - K21^* (1 - K22)^{-1} K21 and its
// smallest eigenvalue. Equivalent to K-hat >= 0 when 1 - K22 > 0.
// Throws PreconditionError when 1 - K22 is not positive definite.
SchurReport schur_complement(const JKernel& k, double tol);

bool schur_check(const JKernel& k, double tol);

struct Norms {
  double op = 0.0;
  double hs = 0.0;
  double trace_even = 0.0;  // trace norm of K_even
  double norm_1_2 = 0.0;    // max(hs, trace_even)
};

Norms norms(const JKernel& k);

// Principal submatrix on the window, bound to the induced subspace.
JKernel restrict(const JKernel& k, const IndexWindow& delta);

struct LTransform {
  JKernel l;
  double condition = 0.0;  // 1-norm condition estimate of 1 - K
};

// L = K (1 - K)^{-1}. Throws SingularMatrix when 1 - K is singular.
LTransform l_transform(const JKernel& k);

struct NormIdentity {
  double lhs = 0.0;  // ||K||
  double rhs = 0.0;  // ||K-hat - P2||
};

NormIdentity norm_identity_check(const JKernel& k);

struct NormAttainment {
  double norm = 0.0;
  double norm_even = 0.0;
  bool norm_is_one = false;
  bool even_is_one = false;
  // Which diagonal block attains 1 in the sense of the two spectral cases:
  // 1 in spec(K11), or 1 in spec(K22).
  bool k11_attains = false;
  bool k22_attains = false;
};

// For a valid kernel, ||K|| = 1 iff ||K_even|| = 1, with the even norm
// attained on K11 or K22 reaching 1.
NormAttainment norm_attainment(const JKernel& k, double tol);

}  // namespace jdpp
