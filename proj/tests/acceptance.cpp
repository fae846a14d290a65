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

// Acceptance harness: one PASS/FAIL line per criterion, tolerances pinned
// below. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "jdpp/dpp.hpp"
#include "jdpp/fredholm.hpp"
#include "jdpp/kernels.hpp"
#include "jdpp/sampler.hpp"
#include "oracles.hpp"

using namespace jdpp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

JKernel as_hermitian(const JKernel& h) {
  return JKernel::from_operator(PartitionedSpace::split(h.size(), 0), h.matrix());
}

// Determinant of the principal submatrix on mask, by LU in test code.
double minor_lu(const CMatrix& k, std::uint64_t mask) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    if ((mask >> i) & 1U) idx.push_back(i);
  }
  if (idx.empty()) return 1.0;
  CMatrix sub(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = k(idx[r], idx[c]);
  }
  return Eigen::PartialPivLU<CMatrix>(sub).determinant().real();
}

void determinant_agreement() {
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  double worst_sd = 0.0, worst_block = 0.0;
  int block_cases = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = uniform_size(rng, 2, 12);
    const auto space = oracle::random_space(rng, n);
    const JKernel a(space, oracle::random_complex(rng, n, n, 1.0 / std::sqrt(double(n))));
    const Complex series = det_series(a, 0.0).value;
    const Complex direct = det_direct(a).value;
    worst_sd = std::max(worst_sd, rel(series, direct));
    if (op_norm(a.block(Part::one, Part::one)) < 1.0) {
      // det_block gives Det(1 - B); B = -A recovers Det(1 + A).
      const Complex block = det_block(JKernel::from_operator(space, -a.matrix())).value;
      worst_block = std::max({worst_block, rel(block, direct), rel(block, series)});
      ++block_cases;
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_sd <= 1e-9 && worst_block <= 1e-9 && secs < 30.0;
  report(1, "determinant methods agree", pass,
         fmt("500 matrices, series/direct max rel %.2e, block max rel %.2e over %d cases "
             "(tol 1e-9), %.2f s (limit 30 s)",
             worst_sd, worst_block, block_cases, secs));
}

void cycle_formula() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform_size(rng, 1, 7);
    const auto space = oracle::random_space(rng, n);
    const JKernel a(space, oracle::random_complex(rng, n, n, 0.6));
    const int k_max = static_cast<int>(n);
    const auto got = cycle_coefficients(a, k_max);
    const auto want = oracle::cycle_sum(a.matrix(), a.even().trace(), k_max);
    for (int k = 0; k < k_max; ++k) {
      const auto i = static_cast<std::size_t>(k);
      worst = std::max(worst, std::abs(got[i] - want[i]) / std::max(1.0, std::abs(want[i])));
    }
  }
  report(2, "Newton recursion matches the permutation cycle sum", worst <= 1e-12,
         fmt("100 cases n <= 7, max error %.2e (tol 1e-12)", worst));
}

void sufficiency() {
  std::mt19937_64 rng(1003);
  double min_corr = 1.0, min_mass = 1.0, worst_sum = 0.0;
  for (std::uint64_t t = 0; t < 300; ++t) {
    const std::size_t n = uniform_size(rng, 1, 10);
    const auto space = oracle::random_space(rng, n);
    RandomSpec spec;
    spec.projection = t % 4 == 0;
    if (spec.projection) spec.rank = uniform_size(rng, 0, n);
    const JKernel k = random_valid(space, spec, 5000 + t);
    const CMatrix m = k.matrix();
    for (int q = 0; q < 20; ++q) {
      const std::uint64_t mask = rng() & ((std::uint64_t{1} << n) - 1);
      min_corr = std::min(min_corr, minor_lu(m, mask));
    }
    const auto signed_m = signed_masses(k);
    min_mass = std::min(min_mass, *std::min_element(signed_m.begin(), signed_m.end()));
    worst_sum = std::max(worst_sum, std::abs(exact_distribution(k).total() - 1.0));
  }
  const bool pass = min_corr >= -1e-9 && min_mass >= -1e-9 && worst_sum <= 1e-9;
  report(3, "valid kernels give probability laws", pass,
         fmt("300 kernels, min correlation det %.2e, min mass %.2e (tol -1e-9), "
             "max |sum - 1| %.2e (tol 1e-9)",
             min_corr, min_mass, worst_sum));
}

void necessity() {
  std::mt19937_64 rng(1004);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int negative = 0, flagged = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = uniform_size(rng, 2, 8);
    std::vector<double> spectrum(n);
    for (auto& x : spectrum) x = u01(rng);
    spectrum[0] = (t % 2 == 0) ? -0.5 : 1.5;
    const auto space = oracle::random_space(rng, n);
    const JKernel h = JKernel::from_operator(space, oracle::hermitian_with_spectrum(rng, spectrum));
    const JKernel k = hat(h);
    const auto m = signed_masses(k);
    if (*std::min_element(m.begin(), m.end()) < -1e-6) ++negative;
    if (!check_validity(k).valid) ++flagged;
  }
  const bool pass = negative >= 285 && flagged == 300;
  report(4, "hat spectrum outside [0, 1] is detected", pass,
         fmt("300 kernels, negative mass < -1e-6 in %d (need >= 285), flagged %d (need 300)",
             negative, flagged));
}

void duality() {
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = uniform_size(rng, 1, 12);
    const auto space = oracle::random_space(rng, n);
    const JKernel k = random_valid(space, {}, 6000 + t);
    const auto lhs = complement_image(exact_distribution(k));
    const auto rhs = exact_distribution(as_hermitian(hat(k)));
    worst = std::max(worst, total_variation(lhs, rhs));
  }
  report(5, "complement image is the hat(K) process", worst <= 1e-9,
         fmt("100 kernels n <= 12, max TV %.2e (tol 1e-9)", worst));
}

void densities() {
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> eps(0.2, 0.95);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = uniform_size(rng, 1, 9);
    const auto space = oracle::random_space(rng, n);
    const JKernel k = thin(random_valid(space, {}, 7000 + t), eps(rng));
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 2) idx.push_back(i);
    }
    const IndexWindow w(idx);
    const auto got = densities_via_l(k, w);
    // Oracle: sum the complement-determinant masses over the window pattern.
    const auto full = oracle::configuration_masses(k.matrix());
    std::vector<double> want(std::size_t{1} << idx.size(), 0.0);
    for (std::uint64_t s = 0; s < full.size(); ++s) {
      std::uint64_t local = 0;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if ((s >> idx[j]) & 1U) local |= std::uint64_t{1} << j;
      }
      want[local] += full[s];
    }
    double tv = 0.0;
    for (std::size_t s = 0; s < want.size(); ++s) tv += std::abs(got.masses()[s] - want[s]);
    worst = std::max(worst, 0.5 * tv);
  }
  CMatrix f(2, 2);
  f << 0.5, 0.5, -0.5, 0.5;
  const auto fixture = densities_via_l(JKernel(PartitionedSpace::split(1, 1), f), IndexWindow{0, 1});
  const double fixture_err =
      std::max({std::abs(fixture.probability(0b00) - 0.5), std::abs(fixture.probability(0b01)),
                std::abs(fixture.probability(0b10)), std::abs(fixture.probability(0b11) - 0.5)});
  const bool pass = worst <= 1e-8 && fixture_err <= 1e-12;
  report(6, "densities through L match the oracle", pass,
         fmt("100 thinned kernels, max TV %.2e (tol 1e-8); fixture max error %.2e (tol 1e-12)",
             worst, fixture_err));
}

void sampler_law() {
  CMatrix f(2, 2);
  f << 0.5, 0.5, -0.5, 0.5;
  const JKernel k(PartitionedSpace::split(1, 1), f);
  const DistributionTable table = exact_distribution(k);
  const std::vector<CorrelationQuery> queries{{0}, {0, 1}};
  const unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  const auto t0 = Clock::now();
  int rejections = 0;
  double worst_z = 0.0, min_p = 1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SampleBatch batch = sample_j(k, 100000, seed, {threads});
    const GofReport g = chi_square_fit(table, batch);
    if (g.p_value < 0.05) ++rejections;
    min_p = std::min(min_p, g.p_value);
    const EstimateReport e = estimate_from(k, queries, batch);
    for (const auto& entry : e.entries) {
      // sigma of a Bernoulli(0.5) mean over N draws.
      const double sigma = std::sqrt(0.25 / 100000.0);
      worst_z = std::max(worst_z, std::abs(entry.empirical - 0.5) / sigma);
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = rejections <= 2 && worst_z <= 5.0 && secs < 60.0;
  report(7, "sampler reproduces the fixture law", pass,
         fmt("20 seeds x 1e5, %d p-values < 0.05 (max 2, min p %.3f), max |z| %.2f (max 5), "
             "%.2f s (limit 60 s)",
             rejections, min_p, worst_z, secs));
}

void graph_projection() {
  std::mt19937_64 rng(1008);
  double worst_idem = 0.0, worst_herm = 0.0, worst_fix = 0.0, min_margin = 1.0;
  int literal = 0;
  for (int t = 0; t < 100; ++t) {
    const auto n1 = static_cast<Eigen::Index>(uniform_size(rng, 1, 8));
    const auto n2 = static_cast<Eigen::Index>(uniform_size(rng, 1, 8));
    const CMatrix g = oracle::random_complex(rng, n2, n1);
    const JKernel k = from_G({g});
    const CMatrix p = hat(k).matrix();
    worst_idem = std::max(worst_idem, op_norm(p * p - p));
    worst_herm = std::max(worst_herm, op_norm(p - p.adjoint()));
    // Fixed vectors G* u (+) u, one per basis vector u of the second part.
    double fix = 0.0;
    for (Eigen::Index j = 0; j < n2; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n1 + n2);
      v.head(n1) = g.adjoint().col(j);
      v(n1 + j) = 1.0;
      fix = std::max(fix, (p * v - v).norm() / v.norm());
    }
    worst_fix = std::max(worst_fix, fix);
    // Literal reading h (+) G h, reported for information only.
    double lit = 0.0;
    for (Eigen::Index i = 0; i < n1; ++i) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n1 + n2);
      v(i) = 1.0;
      v.tail(n2) = g.col(i);
      lit = std::max(lit, (p * v - v).norm() / v.norm());
    }
    if (lit <= 1e-10) ++literal;
    min_margin = std::min(min_margin, check_validity(k).margin);
  }
  const bool pass = worst_idem <= 1e-10 && worst_herm <= 1e-10 && worst_fix <= 1e-10 &&
                    min_margin >= -1e-9;
  report(8, "from_G gives an orthogonal graph projection", pass,
         fmt("100 G up to 8x8, |P^2 - P| %.2e, |P - P*| %.2e, graph {G*u + u} fixed to %.2e "
             "(tol 1e-10), min margin %.2e (tol -1e-9); literal {h + Gh} fixed in %d/100",
             worst_idem, worst_herm, worst_fix, min_margin, literal));
}

// Valid K = hat(H) with H a projection arranged so that K e_x = e_x.
JKernel norm_one_kernel(std::mt19937_64& rng, const PartitionedSpace& space, std::size_t x,
                        std::size_t rank) {
  const auto n = static_cast<Eigen::Index>(space.size());
  const auto xi = static_cast<Eigen::Index>(x);
  // Orthonormal columns supported away from x.
  const CMatrix u = oracle::random_unitary(rng, n - 1);
  CMatrix q = CMatrix::Zero(n, static_cast<Eigen::Index>(rank));
  for (Eigen::Index r = 0, row = 0; r < n; ++r) {
    if (r == xi) continue;
    q.row(r) = u.row(row++).head(static_cast<Eigen::Index>(rank));
  }
  CMatrix h = q * q.adjoint();
  // x in X1: e_x in the range of H. x in X2: e_x in its kernel.
  if (space.part(x) == Part::one) h(xi, xi) = 1.0;
  return hat(JKernel::from_operator(space, h));
}

void norm_one_windows() {
  std::mt19937_64 rng(1009);
  double worst_void = 0.0, worst_raw = 0.0, worst_lemma = 0.0, worst_norm = 0.0;
  int mismatches = 0, cases = 0;
  auto check_norms = [&](const JKernel& k) {
    const NormIdentity id = norm_identity_check(k);
    worst_lemma = std::max(worst_lemma, std::abs(id.lhs - id.rhs) / std::max(1.0, id.lhs));
    worst_norm = std::max(worst_norm, id.lhs - 1.0);
    const NormAttainment na = norm_attainment(k, 1e-9);
    const bool norm_one = std::abs(op_norm(k.matrix()) - 1.0) <= 1e-9;
    const bool even_one = std::abs(op_norm(k.even()) - 1.0) <= 1e-9;
    const bool blocks = na.k11_attains || na.k22_attains;
    if (norm_one != even_one || na.norm_is_one != norm_one || na.even_is_one != even_one ||
        (even_one && !blocks)) {
      ++mismatches;
    }
  };
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform_size(rng, 2, 9);
    const auto space = oracle::random_space(rng, n);
    const std::size_t x = uniform_size(rng, 0, n - 1);
    const JKernel k = norm_one_kernel(rng, space, x, uniform_size(rng, 0, n - 1));
    if (!check_validity(k).valid) {
      ++mismatches;
      continue;
    }
    std::vector<std::size_t> idx{x};
    for (std::size_t i = 0; i < n; ++i) {
      if (i != x && rng() % 2) idx.push_back(i);
    }
    const IndexWindow w(idx);
    const VoidReport v = void_probability(k, w);
    worst_void = std::max(worst_void, std::abs(v.value));
    worst_raw = std::max(worst_raw, std::abs(v.raw_det));
    check_norms(k);
    check_norms(restrict(k, w));
    // Thinned copies sit strictly inside the unit ball.
    check_norms(thin(k, 0.7));
    cases += 3;
  }
  const bool pass = worst_void <= 1e-9 && worst_raw <= 1e-9 && worst_lemma <= 1e-9 &&
                    worst_norm <= 1e-9 && mismatches == 0;
  report(9, "norm-one windows have void probability zero", pass,
         fmt("100 kernels, max void %.2e and raw Det(1 - K^D) %.2e (tol 1e-9); "
             "norm identity max rel %.2e, max ||K|| - 1 %.2e (tol 1e-9); "
             "norm-one equivalence broken in %d of %d",
             worst_void, worst_raw, worst_lemma, worst_norm, mismatches, cases));
}

void nystrom() {
  std::vector<double> dets;
  std::string values;
  for (std::size_t n : {32, 64, 128, 256}) {
    ContinuousKernelSpec spec;
    spec.part1 = {0.0, 1.0};
    spec.k11 = [](double x, double y) { return Complex(-1.5 * x * y); };
    spec.quadrature = Quadrature::midpoint;
    spec.points_per_part = n;
    dets.push_back(det_direct(discretize(spec).kernel).value.real());
    values += fmt(" %zu:%.10f", n, dets.back());
  }
  const double error = std::abs(dets.back() - 0.5);
  bool monotone = true;
  for (std::size_t i = 2; i < dets.size(); ++i) {
    monotone = monotone && std::abs(dets[i] - dets[i - 1]) < std::abs(dets[i - 1] - dets[i - 2]);
  }
  report(10, "Nystrom discretization converges", error <= 1e-3 && monotone,
         fmt("Det(1 + K) at%s; error at 256 %.2e (tol 1e-3), self-convergence %s", values.c_str(),
             error, monotone ? "monotone" : "not monotone"));
}

}  // namespace

int main() {
  determinant_agreement();
  cycle_formula();
  sufficiency();
  necessity();
  duality();
  densities();
  sampler_law();
  graph_projection();
  norm_one_windows();
  nystrom();
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
