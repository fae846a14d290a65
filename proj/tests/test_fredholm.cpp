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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "jdpp/fredholm.hpp"
#include "jdpp/kernels.hpp"
#include "oracles.hpp"

using namespace jdpp;

namespace {

double rel(Complex a, Complex b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

JKernel fixture() {
  CMatrix k(2, 2);
  k << 0.5, 0.5, -0.5, 0.5;
  return JKernel(PartitionedSpace::split(1, 1), k);
}

}  // namespace

TEST_CASE("power traces") {
  std::mt19937_64 rng(1);
  const auto space = oracle::random_space(rng, 5);
  const JKernel a(space, oracle::random_complex(rng, 5, 5, 0.4));
  const auto p = power_traces(a, 4);
  REQUIRE(p.size() == 4);
  CMatrix m = a.matrix();
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(p[static_cast<std::size_t>(k)] - m.trace()) < 1e-13);
    m = m * a.matrix();
  }
  CHECK(power_traces(a, 0).empty());
}

TEST_CASE("Newton recursion matches the permutation cycle sum") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 6;
    const auto space = oracle::random_space(rng, n);
    const JKernel a(space, oracle::random_complex(rng, n, n, 0.7));
    const int k_max = static_cast<int>(std::min<std::size_t>(n, 6));
    const auto got = cycle_coefficients(a, k_max);
    const auto want = oracle::cycle_sum(a.matrix(), a.even().trace(), k_max);
    for (int k = 0; k < k_max; ++k) {
      CHECK(rel(got[static_cast<std::size_t>(k)], want[static_cast<std::size_t>(k)]) < 1e-12);
    }
  }
  CHECK_THROWS_AS(cycle_coefficients(fixture(), 0), PreconditionError);
}

TEST_CASE("cycle coefficients beyond the dimension vanish") {
  const auto c = cycle_coefficients(fixture(), 5);
  CHECK(std::abs(c[2]) < 1e-15);
  CHECK(std::abs(c[4]) < 1e-15);
}

TEST_CASE("the three determinant routes agree with Leibniz and the tuple expansion") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 5;
    const auto space = oracle::random_space(rng, n);
    const JKernel a(space, oracle::random_complex(rng, n, n, 0.5));
    const Complex want =
        oracle::leibniz_det(CMatrix::Identity(n, n) + a.matrix());
    CHECK(rel(det_direct(a).value, want) < 1e-12);
    CHECK(rel(det_series(a, 0.0).value, want) < 1e-12);
    CHECK(rel(det_regularized(a), want) < 1e-10);
    CHECK(rel(oracle::tuple_expansion_det(a.matrix()), want) < 1e-12);

    // Block route computes Det(1 - A).
    if (op_norm(a.block(Part::one, Part::one)) < 1.0) {
      const Complex minus = oracle::leibniz_det(CMatrix::Identity(n, n) - a.matrix());
      CHECK(rel(det_block(a).value, minus) < 1e-12);
    }
  }
}

TEST_CASE("series truncation bound holds") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 4 + t % 8;
    const auto space = oracle::random_space(rng, n);
    CMatrix m = oracle::random_complex(rng, n, n);
    m *= 0.6 / std::max(m.norm(), 1.0);
    const JKernel a(space, m);
    const DetReport r = det_series(a, 1e-6);
    CHECK(r.method == DetMethod::series);
    CHECK(r.terms_used >= 1);
    CHECK(r.truncation_bound <= 1e-6);
    CHECK(std::abs(r.value - det_direct(a).value) <= r.truncation_bound + 1e-14);
  }
}

TEST_CASE("series with norm at least one sums to the dimension") {
  const JKernel a(PartitionedSpace::split(2, 1), 2.0 * CMatrix::Identity(3, 3));
  const DetReport r = det_series(a);
  CHECK(r.terms_used == 3);
  CHECK(r.truncation_bound == 0.0);
  CHECK(std::abs(r.value - 27.0) < 1e-12);
  const DetReport cut = det_series(a, 1e-15, 2);
  CHECK(std::isinf(cut.truncation_bound));
}

TEST_CASE("block determinant preconditions and positivity") {
  CMatrix big = CMatrix::Zero(2, 2);
  big(0, 0) = 1.0;
  CHECK_THROWS_AS(det_block(JKernel(PartitionedSpace::split(1, 1), big)), PreconditionError);

  // J-Hermitian contractions with A11 >= 0: Det(1 - A) > 0.
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + seed % 7;
    const auto space = oracle::random_space(rng, n);
    const JKernel k = random_valid(space, {}, seed);
    const JKernel a(space, 0.95 * k.entries());
    const DetReport r = det_block(a);
    CHECK(r.value.real() > 0.0);
    CHECK(rel(r.value, oracle::leibniz_det(CMatrix::Identity(n, n) - a.matrix())) < 1e-11);
  }
}

TEST_CASE("method names") {
  CHECK(parse_method("series") == DetMethod::series);
  CHECK(parse_method("block") == DetMethod::block);
  CHECK(method_name(DetMethod::direct) == "direct");
  CHECK_THROWS_AS(parse_method("lu"), PreconditionError);
}

TEST_CASE("multiplier determinants") {
  const std::vector<double> minus_one{-1.0, -1.0};
  CHECK(std::abs(det_multiplier(fixture(), minus_one) - Complex(0.5)) < 1e-15);
  const std::vector<double> zero{0.0, 0.0};
  CHECK(std::abs(det_multiplier(fixture(), zero) - Complex(1.0)) < 1e-15);
  const std::vector<double> wrong{1.0};
  CHECK_THROWS_AS(det_multiplier(fixture(), wrong), PreconditionError);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto space = oracle::random_space(rng, n);
    const JKernel k(space, oracle::random_complex(rng, n, n, 0.3));
    std::vector<double> phi(n);
    for (auto& x : phi) x = u(rng);
    const MultiplierReport r = det_multiplier_report(k, phi);
    Eigen::VectorXcd d(n);
    for (std::size_t i = 0; i < n; ++i) d(static_cast<Eigen::Index>(i)) = phi[i];
    const Complex want =
        oracle::leibniz_det(CMatrix::Identity(n, n) + k.matrix() * d.asDiagonal());
    CHECK(rel(r.value, want) < 1e-11);
    CHECK(rel(r.unsymmetrized, want) < 1e-11);
  }
}
