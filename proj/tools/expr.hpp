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

// A small arithmetic language for continuous kernel blocks.
//
//   numbers, x, y, pi, i (imaginary unit)
//   + - * / ^ (right associative), unary minus, parentheses
//   exp sin cos sqrt log abs, pow(a, b)
//
// Evaluation is complex throughout.

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace jdpp::cli {

class Expression {
 public:
  // Throws jdpp::Error with the offending position on a syntax error.
  static Expression parse(const std::string& text);

  std::complex<double> operator()(double x, double y) const;

  const std::string& source() const { return source_; }

  struct Node;

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace jdpp::cli
