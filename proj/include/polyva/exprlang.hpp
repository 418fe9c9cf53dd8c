#pragma once

#include <memory>
#include <string>

#include "polyva/common.hpp"

namespace polyva {

// Total expression language for target functions: literals, variables
// x1..x9, + - * / ^, unary minus, sin/cos/exp/log/abs/sqrt. '^' is
// right-associative and binds tighter than unary minus; no implicit
// multiplication.
class Expr {
 public:
  enum class Kind { Literal, Variable, Unary, Binary, Call };
  enum class BinaryOp { Add, Sub, Mul, Div, Pow };
  enum class Function { Sin, Cos, Exp, Log, Abs, Sqrt };

  Kind kind = Kind::Literal;
  double literal = 0.0;
  int variable = 0;  // 0-based coordinate
  BinaryOp op = BinaryOp::Add;
  Function function = Function::Sin;
  std::unique_ptr<Expr> lhs, rhs;  // Unary/Call use lhs only
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::unique_ptr<Expr> parse_expression(const std::string& source, int dimension);

double eval_expression(const Expr& expr, const Eigen::Ref<const Vector>& x);

// Fully parenthesized canonical form; parsing it back gives an equal tree.
std::string print_expression(const Expr& expr);

bool expr_equal(const Expr& a, const Expr& b);

}  // namespace polyva
