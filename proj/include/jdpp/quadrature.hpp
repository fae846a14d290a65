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
#include <vector>

namespace jdpp {

// A real interval traversed from a to b. Reversed intervals are allowed;
// nodes then run from a down to b and weights stay positive.
struct Interval {
  double a = 0.0;
  double b = 1.0;
  double length() const { return b > a ? b - a : a - b; }
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule midpoint_rule(Interval iv, std::size_t n);

// n-point Gauss-Legendre rule mapped onto the interval. Nodes are found by
// Newton iteration on P_n from Chebyshev starting points.
QuadratureRule gauss_legendre_rule(Interval iv, std::size_t n);

}  // namespace jdpp
