#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "indefsl/expr.hpp"

namespace indefsl {

enum class Side { plus, minus };

[[nodiscard]] const char* to_string(Side s);
[[nodiscard]] constexpr double sign_of(Side s) { return s == Side::plus ? 1.0 : -1.0; }

// Tail behaviour of q at +inf or -inf. These tags drive the essential-spectrum
// rules in `classify`; sampled tails are only used to spot-check them.
namespace tail {
struct ConstantLimit {
  double c = 0.0;  // q -> c
};
struct DecayingSummable {};
struct PowerDecay {
  double alpha = 1.0;        // q ~ coefficient * |x|^-alpha
  double coefficient = -1.0;
};
struct MolchanovGrowth {};  // q -> +inf in the averaged sense
struct TitchmarshDecline {
  double p = 1.0;  // q -> -inf, |q'| = O(|q|^p), p in (0, 3/2)
};
}  // namespace tail

using TailClass = std::variant<std::monostate, tail::ConstantLimit, tail::DecayingSummable, tail::PowerDecay,
                               tail::MolchanovGrowth, tail::TitchmarshDecline>;

[[nodiscard]] std::string to_string(const TailClass& t);
[[nodiscard]] bool has_tag(const TailClass& t);

/// Full-line real potential with tail annotations. Cheap to copy.
class Potential {
 public:
  using Fn = std::function<double(double)>;

  Potential() = default;
  /// From a parsed expression; evaluation goes through a compiled program.
  explicit Potential(ExprPtr expr, TailClass left = {}, TailClass right = {});
  /// From an arbitrary callable; `description` is echoed into reports.
  Potential(Fn fn, std::string description, TailClass left = {}, TailClass right = {}, bool kinks = false);

  [[nodiscard]] static Potential constant(double c);

  [[nodiscard]] double operator()(double x) const { return (*fn_)(x); }

  [[nodiscard]] const std::string& description() const noexcept { return description_; }
  [[nodiscard]] const ExprPtr& expr() const noexcept { return expr_; }
  [[nodiscard]] const TailClass& left_class() const noexcept { return left_; }
  [[nodiscard]] const TailClass& right_class() const noexcept { return right_; }
  /// Tail tag at the end of the half line on `side` (+inf for plus).
  [[nodiscard]] const TailClass& tail_class(Side side) const noexcept { return side == Side::plus ? right_ : left_; }
  [[nodiscard]] bool has_kinks() const noexcept { return kinks_; }

  Potential& with_classes(TailClass left, TailClass right);

  /// q(-x), with the tail tags swapped. Used to map the minus half line onto the plus one.
  [[nodiscard]] Potential reflected() const;

 private:
  std::shared_ptr<const Fn> fn_;
  std::string description_;
  ExprPtr expr_;
  TailClass left_;
  TailClass right_;
  bool kinks_ = false;
};

/// q(x) ≈ q(-x) on a dense sample of [-x_max, x_max].
[[nodiscard]] bool is_even(const Potential& q, double x_max = 50.0, std::size_t n = 4001, double rel_tol = 1e-12);

/// Throws ConfigError unless q is finite on a dense grid over [-x_max, x_max].
void check_finite(const Potential& q, double x_max = 100.0, std::size_t n = 20001);

/// Compares the tail tags against samples of q at |x| in {1e2, 1e3, 1e4}.
/// Returns an empty string when consistent, otherwise a description of the mismatch.
[[nodiscard]] std::string tail_consistency(const Potential& q, Side side);

}  // namespace indefsl
