#pragma once

// Fundamental solutions of -y'' + q y = lambda y with complex lambda.
//
// c and s satisfy c(0) = s'(0) = 1, c'(0) = s(0) = 0. On the minus side the
// integration runs toward negative x; internally it is carried out on the
// reflected potential q(-x) over (0, |x_end|) and mapped back.

#include <array>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "indefsl/potential.hpp"

namespace indefsl::ode {

using Complex = std::complex<double>;

inline constexpr double default_tol = 1e-10;

struct SolutionState {
  double x = 0.0;
  Complex c{1.0, 0.0};
  Complex c_prime{0.0, 0.0};
  Complex s{0.0, 0.0};
  Complex s_prime{1.0, 0.0};
  std::size_t steps = 0;

  [[nodiscard]] Complex wronskian() const { return c * s_prime - c_prime * s; }
};

/// Principal branch used throughout: cut along [0, +inf), sqrt(-1) = i, Im sqrt(z) >= 0.
[[nodiscard]] Complex sqrt_upper(Complex z);

/// Advances the pair (c, s) on [0, X] for a half-line potential given in plus
/// orientation. Values are stored scaled by exp(-log_scale) so that long
/// integrations through exponentially growing regions never overflow.
class FundamentalPropagator {
 public:
  using Vec = std::array<Complex, 4>;  // c, c', s, s'

  FundamentalPropagator(Potential half_line, Complex lambda, double tol = default_tol,
                        double max_step = std::numeric_limits<double>::infinity());

  /// Integrates forward to t >= position(). Throws IntegrationError on step underflow.
  void advance_to(double t);

  [[nodiscard]] double position() const noexcept { return x_; }
  [[nodiscard]] const Vec& scaled() const noexcept { return y_; }
  [[nodiscard]] double log_scale() const noexcept { return log_scale_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
  [[nodiscard]] Complex lambda() const noexcept { return lambda_; }

 private:
  void renormalize();

  Potential q_;
  Complex lambda_;
  double tol_;
  double max_step_;
  double x_ = 0.0;
  double dt_ = 1e-3;
  double log_scale_ = 0.0;
  std::size_t steps_ = 0;
  Vec y_{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};
};

/// c, s and derivatives at x_end (x_end >= 0 for plus, <= 0 for minus).
[[nodiscard]] SolutionState integrate_fundamental(const Potential& q, Side side, Complex lambda, double x_end,
                                                  double tol = default_tol);

/// Zeros of the Neumann solution (y(0) = 1, y'(0) = 0) inside the open half-line
/// interval of length X on `side`, each refined by bisection to ~1e-10.
[[nodiscard]] std::vector<double> neumann_zeros(const Potential& q, Side side, double lambda, double X,
                                                double tol = default_tol);

/// Number of zeros in (0, X) (mirrored for minus); equals the number of
/// eigenvalues below lambda of the Neumann/Dirichlet problem truncated at X.
[[nodiscard]] int oscillation_count(const Potential& q, Side side, double lambda, double X, double tol = default_tol);

}  // namespace indefsl::ode
