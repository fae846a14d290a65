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

#include "jdpp/jop.hpp"
#include "jdpp/kernels.hpp"
#include "oracles.hpp"

using namespace jdpp;

namespace {

JKernel fixture() {
  CMatrix k(2, 2);
  k << 0.5, 0.5, -0.5, 0.5;
  return JKernel(PartitionedSpace::split(1, 1), k);
}

}  // namespace

TEST_CASE("hat of the fixture is a rank-one projection") {
  const CMatrix h = hat(fixture()).matrix();
  CMatrix want(2, 2);
  want << 0.5, -0.5, -0.5, 0.5;
  CHECK(oracle::max_abs(h - want) == 0.0);
}

TEST_CASE("hat is an involution and swaps the two symmetries") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 7;
    const auto space = oracle::random_space(rng, n);
    const JKernel k(space, oracle::random_complex(rng, n, n));
    CHECK(oracle::max_abs(hat(hat(k)).matrix() - k.matrix()) < 1e-15);

    const JKernel j(space, oracle::random_j_hermitian(rng, space));
    CHECK(is_j_hermitian(j, 1e-14));
    const CMatrix hj = hat(j).matrix();
    CHECK(oracle::max_abs(hj - hj.adjoint()) < 1e-14);

    CMatrix herm = oracle::random_complex(rng, n, n);
    herm = ((herm + herm.adjoint()) / 2.0).eval();
    CHECK(is_j_hermitian(hat(JKernel(space, herm)), 1e-14));
  }
}

TEST_CASE("validity verdicts") {
  SUBCASE("fixture: valid with margin 0") {
    const Verdict v = check_validity(fixture());
    CHECK(v.valid);
    CHECK(v.j_hermitian);
    CHECK(std::abs(v.margin) < 1e-15);
    REQUIRE(v.hat_spectrum.size() == 2);
    CHECK(v.hat_spectrum[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(v.hat_spectrum[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("hat spectrum {-0.5, 1.5}") {
    CMatrix k(2, 2);
    k << -0.5, 0.0, 0.0, -0.5;  // hat(diag(-0.5, 1.5))
    const Verdict v = check_validity(JKernel(PartitionedSpace::split(1, 1), k));
    CHECK(v.j_hermitian);
    CHECK_FALSE(v.valid);
    CHECK(v.hat_spectrum[0] == doctest::Approx(-0.5));
    CHECK(v.hat_spectrum[1] == doctest::Approx(1.5));
    CHECK(v.margin == doctest::Approx(-0.5));
  }
  SUBCASE("not J-Hermitian") {
    CMatrix k(2, 2);
    k << 0.5, 0.5, 0.5, 0.5;
    const Verdict v = check_validity(JKernel(PartitionedSpace::split(1, 1), k));
    CHECK_FALSE(v.j_hermitian);
    CHECK_FALSE(v.valid);
    CHECK(std::isnan(v.margin));
    CHECK(v.hat_spectrum.empty());
  }
  SUBCASE("degenerate splits reduce to 0 <= K <= 1 and 0 <= 1 - K <= 1") {
    CMatrix k(2, 2);
    k << 0.3, 0.1, 0.1, 0.6;
    CHECK(check_validity(JKernel(PartitionedSpace::split(2, 0), k)).valid);
    CHECK(check_validity(JKernel(PartitionedSpace::split(0, 2), k)).valid);
    CMatrix big = 1.5 * CMatrix::Identity(2, 2);
    CHECK_FALSE(check_validity(JKernel(PartitionedSpace::split(2, 0), big)).valid);
    CHECK_FALSE(check_validity(JKernel(PartitionedSpace::split(0, 2), big)).valid);
  }
  SUBCASE("empty space") {
    const Verdict v = check_validity(JKernel(PartitionedSpace::split(0, 0), CMatrix(0, 0)));
    CHECK(v.valid);
  }
}

TEST_CASE("weights enter through the operator matrix") {
  const PartitionedSpace s({Part::one, Part::two}, {4.0, 0.25});
  CMatrix e(2, 2);
  e << 0.1, 0.2, -0.2, 0.3;
  const JKernel k(s, e);
  CHECK(k.matrix()(0, 1).real() == doctest::Approx(0.2 * 2.0 * 0.5));
  CHECK(k.matrix()(0, 0).real() == doctest::Approx(0.4));
  const JKernel back = JKernel::from_operator(s, k.matrix());
  CHECK(oracle::max_abs(back.entries() - e) < 1e-15);
}

TEST_CASE("kernel dimension and finiteness are checked") {
  CHECK_THROWS_AS(JKernel(PartitionedSpace::split(1, 1), CMatrix::Zero(3, 3)),
                  PreconditionError);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(JKernel(PartitionedSpace::split(1, 1), bad), PreconditionError);
}

TEST_CASE("Schur complement reproduces both halves of the hat criterion") {
  std::mt19937_64 rng(5);
  int compared = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + t % 6;
    const auto space = oracle::random_space(rng, n);
    const double scale = 0.15 + 0.1 * (t % 4);
    const JKernel k(space, oracle::random_j_hermitian(rng, space, scale));
    const Verdict v = check_validity(k);
    const auto spec = v.hat_spectrum;
    const double n22 = op_norm(k.block(Part::two, Part::two));
    if (n22 < 1.0 - 1e-6 && std::abs(spec.front()) > 1e-6) {
      CHECK(schur_check(k, 1e-12) == (spec.front() >= 0.0));
      ++compared;
    }
    if (v.schur_consistent) CHECK(*v.schur_consistent);
  }
  CHECK(compared > 100);
}

TEST_CASE("Schur check needs 1 - K22 positive definite") {
  CMatrix k = CMatrix::Zero(2, 2);
  k(1, 1) = 1.5;
  CHECK_THROWS_AS(schur_check(JKernel(PartitionedSpace::split(1, 1), k), 1e-9),
                  PreconditionError);
}

TEST_CASE("norm identity ||K|| = ||hat(K) - P2||") {
  const NormIdentity f = norm_identity_check(fixture());
  CHECK(f.lhs == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f.rhs == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  const NormIdentity z = norm_identity_check(JKernel(PartitionedSpace::split(2, 1), CMatrix::Zero(3, 3)));
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 9;
    const auto space = oracle::random_space(rng, n);
    const JKernel k(space, oracle::random_j_hermitian(rng, space, 1.0 + t % 3));
    const NormIdentity r = norm_identity_check(k);
    CHECK(std::abs(r.lhs - r.rhs) <= 1e-10 * std::max(1.0, r.lhs));
  }
}

TEST_CASE("valid kernels are contractions, and norm one is seen on the even part") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 2 + seed % 8;
    const auto space = oracle::random_space(rng, n);
    RandomSpec spec;
    spec.projection = seed % 3 == 0;
    spec.rank = seed % 3 == 0 ? std::optional<std::size_t>(seed % n) : std::nullopt;
    spec.norm_cap = seed % 3 == 1 ? 0.8 : 1.0;
    const JKernel k = random_valid(space, spec, seed);
    const Verdict v = check_validity(k);
    REQUIRE(v.valid);
    CHECK(v.op_norm_k <= 1.0 + 1e-9);
    const NormAttainment a = norm_attainment(k, 1e-9);
    CHECK(a.norm_is_one == a.even_is_one);
    if (a.norm_is_one) CHECK((a.k11_attains || a.k22_attains));
  }
}

TEST_CASE("L transform") {
  SUBCASE("fixture") {
    const LTransform lt = l_transform(fixture());
    CMatrix want(2, 2);
    want << 0.0, 1.0, -1.0, 0.0;
    CHECK(oracle::max_abs(lt.l.matrix() - want) < 1e-15);
  }
  SUBCASE("zero and scalar") {
    const auto s = PartitionedSpace::split(2, 1);
    CHECK(oracle::max_abs(l_transform(JKernel(s, CMatrix::Zero(3, 3))).l.matrix()) == 0.0);
    const CMatrix c = 0.25 * CMatrix::Identity(3, 3);
    const CMatrix want = (0.25 / 0.75) * CMatrix::Identity(3, 3);
    CHECK(oracle::max_abs(l_transform(JKernel(s, c)).l.matrix() - want) < 1e-15);
  }
  SUBCASE("singular") {
    CHECK_THROWS_AS(l_transform(JKernel(PartitionedSpace::split(1, 1),
                                        CMatrix::Identity(2, 2))),
                    SingularMatrix);
  }
  SUBCASE("J-structure and positive diagonal blocks for contractions") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      std::mt19937_64 rng(seed + 1000);
      const std::size_t n = 2 + seed % 7;
      const auto space = oracle::random_space(rng, n);
      const JKernel base = random_valid(space, {}, seed);
      const JKernel k(space, 0.9 * base.entries());
      const LTransform lt = l_transform(k);
      const CMatrix& l = lt.l.matrix();
      CHECK(oracle::max_abs((CMatrix::Identity(n, n) - k.matrix()) * l - k.matrix()) < 1e-12);
      CHECK(is_j_hermitian(lt.l, 1e-10 * std::max(1.0, oracle::max_abs(l))));
      const auto s11 = hermitian_spectrum(lt.l.block(Part::one, Part::one));
      const auto s22 = hermitian_spectrum(lt.l.block(Part::two, Part::two));
      if (!s11.empty()) CHECK(s11.front() >= -1e-10);
      if (!s22.empty()) CHECK(s22.front() >= -1e-10);
    }
  }
}

TEST_CASE("norms") {
  const Norms n = norms(fixture());
  CHECK(n.op == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(n.hs == doctest::Approx(1.0));
  CHECK(n.trace_even == doctest::Approx(1.0));
  CHECK(n.norm_1_2 == doctest::Approx(1.0));
}

TEST_CASE("restriction keeps parts and weights") {
  const PartitionedSpace s({Part::one, Part::two, Part::two}, {1.0, 2.0, 3.0});
  CMatrix e = CMatrix::Zero(3, 3);
  e(2, 2) = 0.5;
  e(1, 2) = 0.25;
  const JKernel r = restrict(JKernel(s, e), IndexWindow{1, 2});
  CHECK(r.size() == 2);
  CHECK(r.space().weight(1) == 3.0);
  CHECK(r.entries()(0, 1).real() == 0.25);
  CHECK(r.matrix()(1, 1).real() == doctest::Approx(1.5));
}
