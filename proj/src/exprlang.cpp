#include "polyva/exprlang.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace polyva {

namespace {

class Parser {
 public:
  Parser(const std::string& source, int dimension)
      : src_(source), dimension_(dimension) {}

  std::unique_ptr<Expr> run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    auto expr = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError("unexpected trailing input", pos_);
    return expr;
  }

 private:
  std::unique_ptr<Expr> parse_sum() {
    auto lhs = parse_product();
    while (true) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        const char c = src_[pos_++];
        lhs = make_binary(c == '+' ? Expr::BinaryOp::Add : Expr::BinaryOp::Sub,
                          std::move(lhs), parse_product());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Expr> parse_product() {
    auto lhs = parse_unary();
    while (true) {
      skip_ws();
      if (peek() == '*' || peek() == '/') {
        const char c = src_[pos_++];
        lhs = make_binary(c == '*' ? Expr::BinaryOp::Mul : Expr::BinaryOp::Div,
                          std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  std::unique_ptr<Expr> parse_unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Unary;
      node->lhs = parse_unary();
      return node;
    }
    return parse_power();
  }

  std::unique_ptr<Expr> parse_power() {
    auto base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      // Right-associative exponent; "-x" allowed in the exponent.
      return make_binary(Expr::BinaryOp::Pow, std::move(base), parse_unary());
    }
    return base;
  }

  std::unique_ptr<Expr> parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_sum();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::unique_ptr<Expr> parse_number() {
    const size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
        pos_ = mark;  // bare 'e' is not an exponent
      else
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Literal;
    node->literal = std::stod(src_.substr(start, pos_ - start));
    return node;
  }

  std::unique_ptr<Expr> parse_name() {
    const size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])))) ++pos_;
    const std::string name = src_.substr(start, pos_ - start);

    if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '9') {
      const int idx = name[1] - '1';
      if (idx >= dimension_)
        throw ParseError("variable " + name + " exceeds dimension " +
                             std::to_string(dimension_),
                         start);
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Variable;
      node->variable = idx;
      return node;
    }

    Expr::Function fn;
    if (name == "sin") fn = Expr::Function::Sin;
    else if (name == "cos") fn = Expr::Function::Cos;
    else if (name == "exp") fn = Expr::Function::Exp;
    else if (name == "log") fn = Expr::Function::Log;
    else if (name == "abs") fn = Expr::Function::Abs;
    else if (name == "sqrt") fn = Expr::Function::Sqrt;
    else throw ParseError("unknown name '" + name + "'", start);

    skip_ws();
    if (peek() != '(') throw ParseError("expected '(' after function name", pos_);
    ++pos_;
    auto arg = parse_sum();
    skip_ws();
    if (peek() != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Call;
    node->function = fn;
    node->lhs = std::move(arg);
    return node;
  }

  static std::unique_ptr<Expr> make_binary(Expr::BinaryOp op, std::unique_ptr<Expr> lhs,
                                           std::unique_ptr<Expr> rhs) {
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Binary;
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  const std::string& src_;
  int dimension_;
  size_t pos_ = 0;
};

std::string point_to_string(const Eigen::Ref<const Vector>& x) {
  std::ostringstream os;
  os << "(";
  for (Index r = 0; r < x.size(); ++r) {
    if (r) os << ",";
    os << x(r);
  }
  os << ")";
  return os.str();
}

}  // namespace

std::unique_ptr<Expr> parse_expression(const std::string& source, int dimension) {
  if (dimension < 1 || dimension > 9)
    throw std::invalid_argument("parse_expression: dimension must be in [1,9]");
  return Parser(source, dimension).run();
}

double eval_expression(const Expr& expr, const Eigen::Ref<const Vector>& x) {
  switch (expr.kind) {
    case Expr::Kind::Literal:
      return expr.literal;
    case Expr::Kind::Variable:
      if (expr.variable >= x.size())
        throw EvalError("variable index exceeds point dimension");
      return x(expr.variable);
    case Expr::Kind::Unary:
      return -eval_expression(*expr.lhs, x);
    case Expr::Kind::Binary: {
      const double a = eval_expression(*expr.lhs, x);
      const double b = eval_expression(*expr.rhs, x);
      switch (expr.op) {
        case Expr::BinaryOp::Add: return a + b;
        case Expr::BinaryOp::Sub: return a - b;
        case Expr::BinaryOp::Mul: return a * b;
        case Expr::BinaryOp::Div:
          if (b == 0.0)
            throw EvalError("division by zero at " + point_to_string(x));
          return a / b;
        case Expr::BinaryOp::Pow: return std::pow(a, b);
      }
      break;
    }
    case Expr::Kind::Call: {
      const double a = eval_expression(*expr.lhs, x);
      switch (expr.function) {
        case Expr::Function::Sin: return std::sin(a);
        case Expr::Function::Cos: return std::cos(a);
        case Expr::Function::Exp: return std::exp(a);
        case Expr::Function::Log:
          if (a <= 0.0)
            throw EvalError("log of non-positive value at " + point_to_string(x));
          return std::log(a);
        case Expr::Function::Abs: return std::abs(a);
        case Expr::Function::Sqrt:
          if (a < 0.0)
            throw EvalError("sqrt of negative value at " + point_to_string(x));
          return std::sqrt(a);
      }
      break;
    }
  }
  throw EvalError("malformed expression tree");
}

std::string print_expression(const Expr& expr) {
  switch (expr.kind) {
    case Expr::Kind::Literal: {
      std::ostringstream os;
      os.precision(17);
      os << expr.literal;
      return os.str();
    }
    case Expr::Kind::Variable:
      return "x" + std::to_string(expr.variable + 1);
    case Expr::Kind::Unary:
      return "(-" + print_expression(*expr.lhs) + ")";
    case Expr::Kind::Binary: {
      const char* op = nullptr;
      switch (expr.op) {
        case Expr::BinaryOp::Add: op = "+"; break;
        case Expr::BinaryOp::Sub: op = "-"; break;
        case Expr::BinaryOp::Mul: op = "*"; break;
        case Expr::BinaryOp::Div: op = "/"; break;
        case Expr::BinaryOp::Pow: op = "^"; break;
      }
      return "(" + print_expression(*expr.lhs) + op + print_expression(*expr.rhs) + ")";
    }
    case Expr::Kind::Call: {
      const char* name = nullptr;
      switch (expr.function) {
        case Expr::Function::Sin: name = "sin"; break;
        case Expr::Function::Cos: name = "cos"; break;
        case Expr::Function::Exp: name = "exp"; break;
        case Expr::Function::Log: name = "log"; break;
        case Expr::Function::Abs: name = "abs"; break;
        case Expr::Function::Sqrt: name = "sqrt"; break;
      }
      return std::string(name) + "(" + print_expression(*expr.lhs) + ")";
    }
  }
  return "";
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Literal: return a.literal == b.literal;
    case Expr::Kind::Variable: return a.variable == b.variable;
    case Expr::Kind::Unary: return expr_equal(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.op == b.op && expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
    case Expr::Kind::Call:
      return a.function == b.function && expr_equal(*a.lhs, *b.lhs);
  }
  return false;
}

}  // namespace polyva
