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

#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "jdpp/error.hpp"

namespace jdpp::cli {

using C = std::complex<double>;

struct Expression::Node {
  enum class Kind { constant, var_x, var_y, neg, add, sub, mul, div, pow, call };
  Kind kind = Kind::constant;
  C value{};
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind k, std::vector<NodePtr> args = {}, C value = {},
             std::string fn = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->args = std::move(args);
  n->value = value;
  n->fn = std::move(fn);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw Error("expression '" + s_ + "': " + what + " at position " +
                std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = make(Kind::add, {lhs, term()});
      } else if (eat('-')) {
        lhs = make(Kind::sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) {
        lhs = make(Kind::mul, {lhs, unary()});
      } else if (eat('/')) {
        lhs = make(Kind::div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Kind::neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Kind::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!eat(')')) error("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) error("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return make(Kind::constant, {}, C(v, 0.0));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name = s_.substr(start, pos_ - start);
      if (eat('(')) {
        std::vector<NodePtr> args{expr()};
        while (eat(',')) args.push_back(expr());
        if (!eat(')')) error("expected ')' after arguments of " + name);
        const std::size_t want = name == "pow" ? 2 : 1;
        if (name != "pow" && name != "exp" && name != "sin" && name != "cos" &&
            name != "sqrt" && name != "log" && name != "abs") {
          error("unknown function '" + name + "'");
        }
        if (args.size() != want) error("wrong argument count for " + name);
        return make(Kind::call, std::move(args), {}, name);
      }
      if (name == "x") return make(Kind::var_x);
      if (name == "y") return make(Kind::var_y);
      if (name == "pi") return make(Kind::constant, {}, C(std::numbers::pi, 0.0));
      if (name == "i") return make(Kind::constant, {}, C(0.0, 1.0));
      error("unknown name '" + name + "'");
    }
    error("unexpected character");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

C eval(const Expression::Node& n, double x, double y) {
  auto arg = [&](std::size_t i) { return eval(*n.args[i], x, y); };
  switch (n.kind) {
    case Kind::constant:
      return n.value;
    case Kind::var_x:
      return {x, 0.0};
    case Kind::var_y:
      return {y, 0.0};
    case Kind::neg:
      return -arg(0);
    case Kind::add:
      return arg(0) + arg(1);
    case Kind::sub:
      return arg(0) - arg(1);
    case Kind::mul:
      return arg(0) * arg(1);
    case Kind::div:
      return arg(0) / arg(1);
    case Kind::pow: {
      const C b = arg(0), e = arg(1);
      // Real powers of real bases stay real, so (-1)^2 is exactly 1.
      if (b.imag() == 0.0 && e.imag() == 0.0 &&
          (b.real() >= 0.0 || e.real() == std::floor(e.real()))) {
        return {std::pow(b.real(), e.real()), 0.0};
      }
      return std::pow(b, e);
    }
    case Kind::call:
      if (n.fn == "pow") return eval(*make(Kind::pow, n.args), x, y);
      if (n.fn == "exp") return std::exp(arg(0));
      if (n.fn == "sin") return std::sin(arg(0));
      if (n.fn == "cos") return std::cos(arg(0));
      if (n.fn == "sqrt") return std::sqrt(arg(0));
      if (n.fn == "log") return std::log(arg(0));
      return {std::abs(arg(0)), 0.0};
  }
  return {};
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.source_ = text;
  e.root_ = Parser(e.source_).parse();
  return e;
}

std::complex<double> Expression::operator()(double x, double y) const {
  return eval(*root_, x, y);
}

}  // namespace jdpp::cli
