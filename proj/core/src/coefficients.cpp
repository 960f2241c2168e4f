// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/coefficients.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "acoustodg/errors.hpp"

namespace adg {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Expression language: recursive descent over
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'* power
//   power  := atom ('^' factor)?          (right associative)
//   atom   := number | 'x' | 'y' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

struct Node {
  enum class Op { Const, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
  Op op;
  double value = 0.0;
  std::unique_ptr<Node> a, b;

  double eval(double x, double y) const {
    switch (op) {
      case Op::Const: return value;
      case Op::VarX: return x;
      case Op::VarY: return y;
      case Op::Add: return a->eval(x, y) + b->eval(x, y);
      case Op::Sub: return a->eval(x, y) - b->eval(x, y);
      case Op::Mul: return a->eval(x, y) * b->eval(x, y);
      case Op::Div: return a->eval(x, y) / b->eval(x, y);
      case Op::Pow: return std::pow(a->eval(x, y), b->eval(x, y));
      case Op::Neg: return -a->eval(x, y);
      case Op::Sin: return std::sin(a->eval(x, y));
      case Op::Cos: return std::cos(a->eval(x, y));
      case Op::Exp: return std::exp(a->eval(x, y));
    }
    return 0.0;
  }
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class ExprParser {
public:
  explicit ExprParser(const std::string& src) : src_(src) {}

  NodePtr parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

private:
  const std::string& src_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("density expression: " + msg + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Node::Op::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = make(Node::Op::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(Node::Op::Mul, std::move(lhs), factor());
      } else if (accept('/')) {
        lhs = make(Node::Op::Div, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (accept('-')) return make(Node::Op::Neg, factor());
    return power();
  }

  NodePtr power() {
    auto base = atom();
    if (accept('^')) return make(Node::Op::Pow, std::move(base), factor());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      accept('(');
      auto e = expr();
      if (!accept(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    fail("expected number, name or '('");
  }

  NodePtr number() {
    size_t end = 0;
    double v = 0.0;
    try {
      v = std::stod(src_.substr(pos_), &end);
    } catch (const std::exception&) {
      fail("bad numeric literal");
    }
    pos_ += end;
    auto n = make(Node::Op::Const);
    n->value = v;
    return n;
  }

  NodePtr ident() {
    const size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string name = src_.substr(start, pos_ - start);
    if (name == "x") return make(Node::Op::VarX);
    if (name == "y") return make(Node::Op::VarY);
    if (name == "e") return constant(std::exp(1.0));
    if (name == "pi") return constant(kPi);
    Node::Op fn;
    if (name == "sin") {
      fn = Node::Op::Sin;
    } else if (name == "cos") {
      fn = Node::Op::Cos;
    } else if (name == "exp") {
      fn = Node::Op::Exp;
    } else {
      fail("unknown name '" + name + "'");
    }
    if (!accept('(')) fail("expected '(' after function name");
    auto arg = expr();
    if (!accept(')')) fail("missing ')'");
    return make(fn, std::move(arg));
  }

  NodePtr constant(double v) {
    auto n = make(Node::Op::Const);
    n->value = v;
    return n;
  }
};

}  // namespace

CoefficientField builtin_density(const std::string& id, double c) {
  CoefficientField f;
  f.c = c;
  f.id = id;
  if (id == "const1") {
    f.rho = [](double, double) { return 1.0; };
  } else if (id == "rho1") {
    f.rho = [](double x, double y) { return 1.0 / (x * x + y * y + 1.0); };
  } else if (id == "rho2" || id == "expxy") {
    f.rho = [](double x, double y) { return std::exp(x * y + 1.0); };
  } else if (id == "sincos") {
    f.rho = [](double x, double y) { return std::exp(std::sin(kPi * x) * std::cos(kPi * y)); };
  } else if (id == "sincos-half") {
    f.rho = [](double x, double y) {
      return std::exp(std::sin(0.5 * kPi * x) * std::cos(0.5 * kPi * y));
    };
  } else if (id == "coscos-inv") {
    f.rho = [](double x, double y) {
      return 1.0 / (std::cos(kPi * x) * std::cos(kPi * y) + 2.0);
    };
  } else {
    throw UnknownIdError("unknown builtin density '" + id + "'");
  }
  return f;
}

CoefficientField parse_density(const std::string& expr, double c) {
  auto ast = ExprParser(expr).parse();
  CoefficientField f;
  f.c = c;
  f.id = expr;
  f.rho = [root = std::shared_ptr<Node>(std::move(ast))](double x, double y) {
    return root->eval(x, y);
  };
  return f;
}

DensityBounds density_bounds(const CoefficientField& field,
                             const std::array<double, 4>& bbox, int m) {
  if (m < 64) throw std::invalid_argument("density_bounds: need at least 64 samples per side");
  const double x0 = bbox[0], y0 = bbox[1], x1 = bbox[2], y1 = bbox[3];
  DensityBounds b;
  b.lower = std::numeric_limits<double>::infinity();
  b.upper = -b.lower;
  b.samples_per_side = m;
  for (int j = 0; j < m; ++j) {
    const double y = y0 + (y1 - y0) * j / (m - 1);
    for (int i = 0; i < m; ++i) {
      const double x = x0 + (x1 - x0) * i / (m - 1);
      const double v = field(x, y);
      if (!(v > 0.0)) {
        throw PositivityError("density is not positive at (" + std::to_string(x) + ", " +
                              std::to_string(y) + "): " + std::to_string(v));
      }
      b.lower = std::min(b.lower, v);
      b.upper = std::max(b.upper, v);
    }
  }
  return b;
}

double stabilization_preset(const std::string& name, const DensityBounds& bounds,
                            int k, double base_a) {
  if (k < 1) throw std::invalid_argument("stabilization_preset: k must be >= 1");
  const double rb = bounds.upper, lb = bounds.lower;
  const double k2 = static_cast<double>(k) * k;

  const auto starts_with = [&](const char* p) { return name.rfind(p, 0) == 0; };

  double value = -1.0;
  if (name == "raw") {
    if (!(base_a > 0.0)) throw std::invalid_argument("preset raw: base a must be positive");
    value = base_a;
  } else if (starts_with("raw") && name.size() > 3) {
    // "raw4", "raw8", ...: the base folded into the id
    try {
      value = std::stod(name.substr(3));
    } catch (const std::exception&) {
      throw UnknownIdError("unknown stabilization preset '" + name + "'");
    }
    if (!(value > 0.0)) throw std::invalid_argument("preset " + name + ": non-positive base");
  } else if (name == "sum1") {
    value = rb + lb;
  } else if (name == "sum2") {
    value = 2.0 * (rb + lb);
  } else if (name == "sum4") {
    value = 4.0 * (rb + lb);
  } else if (name == "max2" || name == "2rhobar") {
    value = 2.0 * rb;
  } else if (name == "max4" || name == "4rhobar") {
    value = 4.0 * rb;
  } else if (name == "max8" || name == "8rhobar") {
    value = 8.0 * rb;
  } else if (starts_with("plus1-")) {
    double mult = 0.0;
    try {
      mult = std::stod(name.substr(6));
    } catch (const std::exception&) {
      throw UnknownIdError("unknown stabilization preset '" + name + "'");
    }
    if (!(mult > 0.0)) throw std::invalid_argument("preset " + name + ": non-positive multiplier");
    value = mult * (rb + 1.0);
  } else {
    throw UnknownIdError("unknown stabilization preset '" + name + "'");
  }
  return value * k2;
}

}  // namespace adg
