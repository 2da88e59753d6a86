#include "indefsl/potential.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "indefsl/error.hpp"
#include "indefsl/kernels.hpp"

namespace indefsl {

const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

namespace {

struct TagNamer {
  std::string operator()(std::monostate) const { return "untagged"; }
  std::string operator()(const tail::ConstantLimit& t) const { return fmt::format("constant_limit:{:.17g}", t.c); }
  std::string operator()(const tail::DecayingSummable&) const { return "decaying_summable"; }
  std::string operator()(const tail::PowerDecay& t) const {
    return fmt::format("power_decay:{:.17g}:{:.17g}", t.alpha, t.coefficient);
  }
  std::string operator()(const tail::MolchanovGrowth&) const { return "molchanov_growth"; }
  std::string operator()(const tail::TitchmarshDecline& t) const {
    return fmt::format("titchmarsh_decline:{:.17g}", t.p);
  }
};

}  // namespace

std::string to_string(const TailClass& t) { return std::visit(TagNamer{}, t); }
bool has_tag(const TailClass& t) { return !std::holds_alternative<std::monostate>(t); }

Potential::Potential(ExprPtr expr, TailClass left, TailClass right)
    : description_(unparse(*expr)),
      expr_(std::move(expr)),
      left_(std::move(left)),
      right_(std::move(right)),
      kinks_(indefsl::has_kinks(*expr_)) {
  auto program = std::make_shared<const CompiledExpr>(*expr_);
  fn_ = std::make_shared<const Fn>([program](double x) { return (*program)(x); });
}

Potential::Potential(Fn fn, std::string description, TailClass left, TailClass right, bool kinks)
    : fn_(std::make_shared<const Fn>(std::move(fn))),
      description_(std::move(description)),
      left_(std::move(left)),
      right_(std::move(right)),
      kinks_(kinks) {}

Potential Potential::constant(double c) {
  return Potential(Expr::make_number(c), tail::ConstantLimit{c}, tail::ConstantLimit{c});
}

Potential& Potential::with_classes(TailClass left, TailClass right) {
  left_ = std::move(left);
  right_ = std::move(right);
  return *this;
}

Potential Potential::reflected() const {
  Potential out = *this;
  auto inner = fn_;
  out.fn_ = std::make_shared<const Fn>([inner](double x) { return (*inner)(-x); });
  out.description_ = "reflect(" + description_ + ")";
  out.expr_.reset();
  std::swap(out.left_, out.right_);
  return out;
}

bool is_even(const Potential& q, double x_max, std::size_t n, double rel_tol) {
  std::vector<double> fwd(n), bwd(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_max * static_cast<double>(i) / static_cast<double>(n - 1);
    fwd[i] = q(x);
    bwd[i] = q(-x);
  }
  const double scale = std::max(1.0, kernels::max_abs(fwd));
  const double diff = kernels::max_abs_diff(fwd, bwd);
  return diff <= rel_tol * scale;
}

void check_finite(const Potential& q, double x_max, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = q(-x_max + 2.0 * x_max * static_cast<double>(i) / static_cast<double>(n - 1));
  const double m = kernels::max_abs(v);
  if (!std::isfinite(m)) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(v[i])) {
        const double x = -x_max + 2.0 * x_max * static_cast<double>(i) / static_cast<double>(n - 1);
        throw ConfigError(fmt::format("potential '{}' is not finite at x = {:.6g}", q.description(), x));
      }
    }
  }
}

namespace {

struct TailChecker {
  const Potential& q;
  double sign;

  [[nodiscard]] double at(double r) const { return q(sign * r); }

  std::string operator()(std::monostate) const { return "no class annotation"; }

  std::string operator()(const tail::ConstantLimit& t) const {
    const double d2 = std::fabs(at(1e2) - t.c), d4 = std::fabs(at(1e4) - t.c);
    if (d4 > 1e-1 || d4 > d2 + 1e-12) return fmt::format("q does not approach {} (|q-c| = {:.3g} at 1e4)", t.c, d4);
    return {};
  }

  std::string operator()(const tail::DecayingSummable&) const {
    const double w2 = 1e2 * std::fabs(at(1e2)), w4 = 1e4 * std::fabs(at(1e4));
    if (w4 > w2 + 1e-12 || w4 > 1e-1)
      return fmt::format("|x q| does not decay ({:.3g} at 1e2, {:.3g} at 1e4)", w2, w4);
    return {};
  }

  std::string operator()(const tail::PowerDecay& t) const {
    for (double r : {1e3, 1e4}) {
      const double scaled = at(r) * std::pow(r, t.alpha);
      if (std::fabs(scaled - t.coefficient) > 0.1 * std::fabs(t.coefficient) + 1e-3)
        return fmt::format("q |x|^{} = {:.4g} at |x| = {:.0e}, expected {}", t.alpha, scaled, r, t.coefficient);
    }
    return {};
  }

  std::string operator()(const tail::MolchanovGrowth&) const {
    const double a = at(1e2), b = at(1e3), c = at(1e4);
    if (!(a < b && b < c && c > 0.0)) return "q does not grow to +inf";
    return {};
  }

  std::string operator()(const tail::TitchmarshDecline&) const {
    const double a = at(1e2), b = at(1e3), c = at(1e4);
    if (!(a > b && b > c && c < 0.0)) return "q does not decline to -inf";
    return {};
  }
};

}  // namespace

std::string tail_consistency(const Potential& q, Side side) {
  return std::visit(TailChecker{q, sign_of(side)}, q.tail_class(side));
}

}  // namespace indefsl
