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

#include "jdpp/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "jdpp/error.hpp"

namespace jdpp {

namespace {

void check_rule(Interval iv, std::size_t n) {
  if (n == 0) throw PreconditionError("quadrature needs at least one node");
  if (!std::isfinite(iv.a) || !std::isfinite(iv.b) || iv.a == iv.b) {
    throw PreconditionError("quadrature interval must be finite and non-empty");
  }
}

}  // namespace

QuadratureRule midpoint_rule(Interval iv, std::size_t n) {
  check_rule(iv, n);
  QuadratureRule r;
  const double h = (iv.b - iv.a) / static_cast<double>(n);
  r.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes.push_back(iv.a + (static_cast<double>(i) + 0.5) * h);
  }
  r.weights.assign(n, std::abs(h));
  return r;
}

QuadratureRule gauss_legendre_rule(Interval iv, std::size_t n) {
  check_rule(iv, n);
  std::vector<double> t(n), w(n);
  const double nd = static_cast<double>(n);
  // Roots are symmetric; compute the upper half.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : nd * (x * p1 - p0) / (x * x - 1.0);
    const double weight = 2.0 / ((1.0 - x * x) * dp * dp);
    t[i] = -x;
    t[n - 1 - i] = x;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) t[n / 2] = 0.0;

  QuadratureRule r;
  const double half = 0.5 * (iv.b - iv.a);
  const double mid = 0.5 * (iv.a + iv.b);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes.push_back(mid + half * t[i]);
    r.weights.push_back(std::abs(half) * w[i]);
  }
  return r;
}

}  // namespace jdpp
