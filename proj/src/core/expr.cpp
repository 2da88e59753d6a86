#include "indefsl/expr.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <fmt/format.h>

namespace indefsl {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

std::size_t arity(ExprOp op) {
  switch (op) {
    case ExprOp::number:
    case ExprOp::variable:
      return 0;
    case ExprOp::negate:
    case ExprOp::fn_abs:
    case ExprOp::fn_sgn:
    case ExprOp::fn_exp:
    case ExprOp::fn_sin:
    case ExprOp::fn_cos:
    case ExprOp::fn_sqrt:
      return 1;
    default:
      return 2;
  }
}

double apply1(ExprOp op, double a) {
  switch (op) {
    case ExprOp::negate: return -a;
    case ExprOp::fn_abs: return std::fabs(a);
    case ExprOp::fn_sgn: return sgn(a);
    case ExprOp::fn_exp: return std::exp(a);
    case ExprOp::fn_sin: return std::sin(a);
    case ExprOp::fn_cos: return std::cos(a);
    case ExprOp::fn_sqrt: return std::sqrt(a);
    default: throw std::logic_error("not a unary op");
  }
}

double apply2(ExprOp op, double a, double b) {
  switch (op) {
    case ExprOp::add: return a + b;
    case ExprOp::subtract: return a - b;
    case ExprOp::multiply: return a * b;
    case ExprOp::divide: return a / b;
    case ExprOp::power: return std::pow(a, b);
    case ExprOp::fn_min: return std::fmin(a, b);
    case ExprOp::fn_max: return std::fmax(a, b);
    default: throw std::logic_error("not a binary op");
  }
}

const char* infix_symbol(ExprOp op) {
  switch (op) {
    case ExprOp::add: return "+";
    case ExprOp::subtract: return "-";
    case ExprOp::multiply: return "*";
    case ExprOp::divide: return "/";
    case ExprOp::power: return "^";
    default: return nullptr;
  }
}

}  // namespace

ExprPtr Expr::make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::number;
  e->value = v;
  return e;
}

ExprPtr Expr::make_variable() {
  auto e = std::make_shared<Expr>();
  e->op = ExprOp::variable;
  return e;
}

ExprPtr Expr::make(ExprOp op, std::vector<ExprPtr> args) {
  if (args.size() != arity(op)) throw std::invalid_argument("wrong number of operands");
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  return e;
}

const char* op_name(ExprOp op) {
  switch (op) {
    case ExprOp::fn_abs: return "abs";
    case ExprOp::fn_sgn: return "sgn";
    case ExprOp::fn_exp: return "exp";
    case ExprOp::fn_sin: return "sin";
    case ExprOp::fn_cos: return "cos";
    case ExprOp::fn_sqrt: return "sqrt";
    case ExprOp::fn_min: return "min";
    case ExprOp::fn_max: return "max";
    case ExprOp::number: return "number";
    case ExprOp::variable: return "x";
    case ExprOp::negate: return "neg";
    default: return infix_symbol(op);
  }
}

bool equal(const Expr& a, const Expr& b) {
  if (a.op != b.op) return false;
  if (a.op == ExprOp::number) return std::bit_cast<std::uint64_t>(a.value) == std::bit_cast<std::uint64_t>(b.value);
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

double evaluate(const Expr& e, double x) {
  switch (arity(e.op)) {
    case 0: return e.op == ExprOp::number ? e.value : x;
    case 1: return apply1(e.op, evaluate(*e.args[0], x));
    default: return apply2(e.op, evaluate(*e.args[0], x), evaluate(*e.args[1], x));
  }
}

std::string unparse(const Expr& e) {
  switch (e.op) {
    case ExprOp::number:
      // Literals are non-negative by construction of the parser; negative values
      // can only come from programmatic trees and are wrapped for reparsing.
      if (std::signbit(e.value)) return fmt::format("(0{:.17g})", e.value);
      return fmt::format("{:.17g}", e.value);
    case ExprOp::variable:
      return "x";
    case ExprOp::negate:
      return "(-" + unparse(*e.args[0]) + ")";
    default:
      break;
  }
  if (const char* sym = infix_symbol(e.op)) {
    return "(" + unparse(*e.args[0]) + sym + unparse(*e.args[1]) + ")";
  }
  std::string out = op_name(e.op);
  out += "(";
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i) out += ",";
    out += unparse(*e.args[i]);
  }
  return out + ")";
}

bool has_kinks(const Expr& e) {
  switch (e.op) {
    case ExprOp::fn_abs:
    case ExprOp::fn_sgn:
    case ExprOp::fn_min:
    case ExprOp::fn_max:
      return true;
    default:
      break;
  }
  for (const auto& a : e.args) {
    if (has_kinks(*a)) return true;
  }
  return false;
}

CompiledExpr::CompiledExpr(const Expr& e) {
  emit(e);
  std::size_t depth = 0;
  for (const auto& in : code_) {
    const std::size_t n = arity(in.op);
    depth = depth + 1 - n;
    max_depth_ = std::max(max_depth_, depth);
  }
  max_depth_ = std::max<std::size_t>(max_depth_, 1);
}

void CompiledExpr::emit(const Expr& e) {
  for (const auto& a : e.args) emit(*a);
  code_.push_back({e.op, e.value});
}

double CompiledExpr::operator()(double x) const {
  constexpr std::size_t kInline = 32;
  std::array<double, kInline> small{};
  std::vector<double> big;
  double* stack = small.data();
  if (max_depth_ > kInline) {
    big.resize(max_depth_);
    stack = big.data();
  }
  std::size_t top = 0;
  for (const auto& in : code_) {
    switch (in.op) {
      case ExprOp::number: stack[top++] = in.value; break;
      case ExprOp::variable: stack[top++] = x; break;
      case ExprOp::add: --top; stack[top - 1] += stack[top]; break;
      case ExprOp::subtract: --top; stack[top - 1] -= stack[top]; break;
      case ExprOp::multiply: --top; stack[top - 1] *= stack[top]; break;
      case ExprOp::divide: --top; stack[top - 1] /= stack[top]; break;
      default:
        if (arity(in.op) == 1) {
          stack[top - 1] = apply1(in.op, stack[top - 1]);
        } else {
          --top;
          stack[top - 1] = apply2(in.op, stack[top - 1], stack[top]);
        }
    }
  }
  return stack[0];
}

}  // namespace indefsl
