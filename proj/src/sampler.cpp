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

#include "jdpp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <Eigen/Eigenvalues>

#include "jdpp/rng.hpp"
#include "jdpp/simd.hpp"

namespace jdpp {

namespace {

constexpr double kClamp = 1e-9;
constexpr double kResidualFloor = 1e-12;

struct Plan {
  Eigen::VectorXd lambda;
  CMatrix vectors;  // columns are eigenvectors
};

Plan make_plan(const JKernel& h) {
  const CMatrix& m = h.matrix();
  const double scale = std::max(1.0, m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
  if (m.size() != 0 &&
      (m - m.adjoint()).cwiseAbs().maxCoeff() > kClamp * scale) {
    throw InvalidKernel("sample_hermitian: kernel is not Hermitian");
  }
  Plan p;
  if (m.size() == 0) return p;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver((m + m.adjoint()) / 2.0);
  p.lambda = solver.eigenvalues();
  p.vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < p.lambda.size(); ++i) {
    double& l = p.lambda(i);
    if (l < -kClamp || l > 1.0 + kClamp) {
      throw InvalidKernel("sample_hermitian: eigenvalue " + std::to_string(l) +
                          " outside [0, 1]");
    }
    l = std::clamp(l, 0.0, 1.0);
  }
  return p;
}

Configuration draw(const Plan& plan, std::uint64_t seed, std::uint64_t index) {
  PhiloxStream rng(seed, stream_tag::sampler, index);
  const Eigen::Index n = plan.vectors.rows();
  std::vector<Eigen::Index> chosen;
  for (Eigen::Index i = 0; i < plan.lambda.size(); ++i) {
    if (rng.uniform() < plan.lambda(i)) chosen.push_back(i);
  }
  const std::size_t k = chosen.size();
  if (k == 0) return {};

  // Row-major copy of the selected frame: frame[x * k + j] = V(x, chosen[j]).
  std::vector<Complex> frame(static_cast<std::size_t>(n) * k);
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < k; ++j) {
      const Complex v = plan.vectors(x, chosen[j]);
      frame[static_cast<std::size_t>(x) * k + j] = v;
      d[static_cast<std::size_t>(x)] += std::norm(v);
    }
  }

  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::vector<Complex>> basis;
  basis.reserve(k);
  std::vector<std::size_t> points;
  std::vector<Complex> col(nn);
  for (std::size_t step = 0; step < k; ++step) {
    double total = 0.0;
    for (std::size_t x = 0; x < nn; ++x) {
      if (d[x] < kResidualFloor) d[x] = 0.0;
      total += d[x];
    }
    if (!(total > 0.0)) break;
    const double target = rng.uniform() * total;
    std::size_t x = 0;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (; x < nn; ++x) {
      if (d[x] <= 0.0) continue;
      last_positive = x;
      acc += d[x];
      if (target < acc) break;
    }
    if (x == nn) x = last_positive;
    points.push_back(x);

    // Column x of the projection, P(:, x) = V V(x, :)^*.
    for (std::size_t y = 0; y < nn; ++y) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        s += frame[y * k + j] * std::conj(frame[x * k + j]);
      }
      col[y] = s;
    }
    for (const auto& c : basis) {
      simd::complex_axpy_sub(col, std::conj(c[x]), c);
    }
    const double inv = 1.0 / std::sqrt(d[x]);
    for (auto& v : col) v *= inv;
    simd::subtract_abs2(d, col);
    d[x] = 0.0;
    basis.push_back(col);
  }
  return Configuration(std::move(points));
}

template <class Fn>
void for_shards(std::size_t count, unsigned threads, Fn fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (workers == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([=] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

SampleBatch sample_hermitian(const JKernel& h, std::size_t count,
                             std::uint64_t seed, SamplerOptions opt) {
  const Plan plan = make_plan(h);
  SampleBatch batch{seed, count, std::vector<Configuration>(count)};
  if (h.size() == 0) return batch;
  for_shards(count, opt.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      batch.configurations[i] = draw(plan, seed, i);
    }
  });
  return batch;
}

SampleBatch sample_j(const JKernel& k, std::size_t count, std::uint64_t seed,
                     SamplerOptions opt) {
  require_valid(k);
  SampleBatch batch = sample_hermitian(hat(k), count, seed, opt);
  for (auto& gamma : batch.configurations) {
    gamma = complement(k.space(), gamma);
  }
  return batch;
}

EstimateReport estimate_from(const JKernel& k,
                             std::span<const CorrelationQuery> queries,
                             const SampleBatch& batch) {
  EstimateReport r;
  r.count = batch.configurations.size();
  const double n = static_cast<double>(r.count);
  for (const auto& q : queries) {
    EstimateEntry e;
    e.query = q;
    e.exact = correlation(k, q);
    std::size_t hits = 0;
    for (const auto& gamma : batch.configurations) {
      bool all = true;
      for (std::size_t x : q) {
        if (!gamma.contains(x)) {
          all = false;
          break;
        }
      }
      if (all) ++hits;
    }
    e.empirical = r.count ? static_cast<double>(hits) / n : 0.0;
    e.stderr_ = r.count ? std::sqrt(e.empirical * (1.0 - e.empirical) / n) : 0.0;
    const double diff = e.empirical - e.exact;
    if (e.stderr_ > 0.0) {
      e.z = diff / e.stderr_;
    } else {
      e.z = std::abs(diff) <= 1e-12 ? 0.0
                                    : std::copysign(
                                          std::numeric_limits<double>::infinity(),
                                          diff);
    }
    e.flagged = std::abs(e.z) > 4.0;
    r.entries.push_back(std::move(e));
  }
  return r;
}

EstimateReport estimate(const JKernel& k,
                        std::span<const CorrelationQuery> queries,
                        std::size_t count, std::uint64_t seed,
                        SamplerOptions opt) {
  return estimate_from(k, queries, sample_j(k, count, seed, opt));
}

GofReport chi_square_fit(const DistributionTable& table,
                         const SampleBatch& batch) {
  GofReport r;
  r.count = batch.configurations.size();
  const auto masses = table.masses();
  std::vector<double> observed(masses.size(), 0.0);
  for (const auto& gamma : batch.configurations) {
    observed.at(gamma.mask()) += 1.0;
  }
  const double n = static_cast<double>(r.count);

  struct Cell {
    double expected;
    double observed;
  };
  std::vector<Cell> cells;
  Cell pool{0.0, 0.0};
  for (std::size_t s = 0; s < masses.size(); ++s) {
    const double e = masses[s] * n;
    if (e >= 5.0) {
      cells.push_back({e, observed[s]});
    } else {
      pool.expected += e;
      pool.observed += observed[s];
    }
  }
  if (pool.expected >= 5.0) {
    cells.push_back(pool);
  } else if (pool.expected > 0.0 || pool.observed > 0.0) {
    if (cells.empty()) {
      cells.push_back(pool);
    } else {
      auto smallest = std::min_element(
          cells.begin(), cells.end(),
          [](const Cell& a, const Cell& b) { return a.expected < b.expected; });
      smallest->expected += pool.expected;
      smallest->observed += pool.observed;
    }
  }

  r.cells = cells.size();
  for (const auto& c : cells) {
    if (c.expected <= 0.0) {
      if (c.observed > 0.0) r.statistic = std::numeric_limits<double>::infinity();
      continue;
    }
    const double diff = c.observed - c.expected;
    r.statistic += diff * diff / c.expected;
  }
  r.dof = static_cast<int>(cells.size()) - 1;
  if (r.dof < 1) {
    r.p_value = std::isinf(r.statistic) ? 0.0 : 1.0;
    r.dof = 0;
    return r;
  }
  r.p_value = std::isinf(r.statistic)
                  ? 0.0
                  : boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic);
  return r;
}

GofReport goodness_of_fit(const JKernel& k, std::size_t count,
                          std::uint64_t seed, SamplerOptions opt) {
  if (k.size() > kDefaultEnumerationCap) {
    throw PreconditionError("goodness_of_fit: " + std::to_string(k.size()) +
                            " points exceed the enumeration cap " +
                            std::to_string(kDefaultEnumerationCap));
  }
  const DistributionTable table = exact_distribution(k);
  return chi_square_fit(table, sample_j(k, count, seed, opt));
}

}  // namespace jdpp
