#pragma once

// Real-valued expression trees in one variable `x`, plus a flat postfix program
// compiled from them for fast repeated evaluation inside the integrator.

#include <memory>
#include <string>
#include <vector>

namespace indefsl {

enum class ExprOp {
  number,
  variable,
  negate,
  add,
  subtract,
  multiply,
  divide,
  power,
  fn_abs,
  fn_sgn,
  fn_exp,
  fn_sin,
  fn_cos,
  fn_sqrt,
  fn_min,
  fn_max,
};

struct Expr {
  ExprOp op = ExprOp::number;
  double value = 0.0;  // only for ExprOp::number
  std::vector<std::shared_ptr<const Expr>> args;

  static std::shared_ptr<const Expr> make_number(double v);
  static std::shared_ptr<const Expr> make_variable();
  static std::shared_ptr<const Expr> make(ExprOp op, std::vector<std::shared_ptr<const Expr>> args);
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Structural equality; number literals compare bitwise.
[[nodiscard]] bool equal(const Expr& a, const Expr& b);

/// Tree-walking evaluation. Slow; use CompiledExpr in loops.
[[nodiscard]] double evaluate(const Expr& e, double x);

/// Fully parenthesised text that parses back to an identical tree.
[[nodiscard]] std::string unparse(const Expr& e);

/// True when the tree contains abs, sgn, min or max.
[[nodiscard]] bool has_kinks(const Expr& e);

[[nodiscard]] const char* op_name(ExprOp op);

class CompiledExpr {
 public:
  explicit CompiledExpr(const Expr& e);
  [[nodiscard]] double operator()(double x) const;

 private:
  struct Instr {
    ExprOp op;
    double value;
  };
  void emit(const Expr& e);

  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
};

}  // namespace indefsl
