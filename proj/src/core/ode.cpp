#include "indefsl/ode.hpp"

#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "indefsl/error.hpp"

namespace indefsl::ode {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kRenormThreshold = 0x1p64;

template <class State>
auto make_stepper(double tol) {
  using Stepper = odeint::runge_kutta_fehlberg78<State, double, State, double, odeint::array_algebra>;
  return odeint::make_controlled(tol, tol, Stepper());
}

[[noreturn]] void underflow(double x, double dt) {
  throw IntegrationError(fmt::format("step size underflow at x = {:.12g} (dt = {:.3g}); potential too stiff for "
                                     "the requested tolerance",
                                     x, dt),
                         x);
}

double min_step(double x) { return 1e-13 * std::max(1.0, std::fabs(x)); }

}  // namespace

Complex sqrt_upper(Complex z) {
  Complex r = std::sqrt(z);
  if (r.imag() < 0.0) r = -r;
  return r;
}

FundamentalPropagator::FundamentalPropagator(Potential half_line, Complex lambda, double tol, double max_step)
    : q_(std::move(half_line)), lambda_(lambda), tol_(tol), max_step_(max_step) {
  if (!(tol > 0.0)) throw ConfigError("integrator tolerance must be positive");
  // Start with a step resolving the local wavelength.
  const double k = std::sqrt(std::abs(lambda_ - q_(0.0)) + 1.0);
  dt_ = std::min(0.1 / k, max_step_);
}

void FundamentalPropagator::renormalize() {
  double m = 0.0;
  for (const auto& v : y_) m = std::max(m, std::abs(v));
  if (m > kRenormThreshold) {
    for (auto& v : y_) v /= m;
    log_scale_ += std::log(m);
  }
}

void FundamentalPropagator::advance_to(double t) {
  if (t < x_) throw std::invalid_argument("FundamentalPropagator: cannot integrate backwards");
  auto stepper = make_stepper<Vec>(tol_);
  const Potential& q = q_;
  const Complex lam = lambda_;
  auto rhs = [&q, lam](const Vec& y, Vec& dy, double x) {
    const Complex w = q(x) - lam;
    dy[0] = y[1];
    dy[1] = w * y[0];
    dy[2] = y[3];
    dy[3] = w * y[2];
  };
  while (x_ < t) {
    double dt = std::min({dt_, max_step_, t - x_});
    const bool clipped = dt < dt_;
    for (;;) {
      if (stepper.try_step(rhs, y_, x_, dt) == odeint::success) {
        ++steps_;
        // try_step leaves the proposed next size in dt; a step shortened to hit
        // the target says nothing about the natural size.
        if (!clipped) dt_ = dt;
        break;
      }
      if (dt < min_step(x_)) underflow(x_, dt);
    }
    renormalize();
    if (t - x_ < 1e-15 * std::max(1.0, t)) x_ = t;
  }
}

SolutionState integrate_fundamental(const Potential& q, Side side, Complex lambda, double x_end, double tol) {
  if (side == Side::plus ? x_end < 0.0 : x_end > 0.0)
    throw ConfigError(fmt::format("x_end = {} is not on the {} side", x_end, to_string(side)));
  const Potential half = side == Side::plus ? q : q.reflected();
  FundamentalPropagator prop(half, lambda, tol);
  prop.advance_to(std::fabs(x_end));
  const double scale = std::exp(prop.log_scale());
  if (!std::isfinite(scale)) throw NumericalError("fundamental solutions overflow double range at requested x_end");
  const auto& v = prop.scaled();
  SolutionState st;
  st.x = x_end;
  st.steps = prop.steps();
  if (side == Side::plus) {
    st.c = v[0] * scale;
    st.c_prime = v[1] * scale;
    st.s = v[2] * scale;
    st.s_prime = v[3] * scale;
  } else {
    // c(x) = c~(-x), s(x) = -s~(-x) where ~ refers to the reflected problem.
    st.c = v[0] * scale;
    st.c_prime = -v[1] * scale;
    st.s = -v[2] * scale;
    st.s_prime = v[3] * scale;
  }
  return st;
}

namespace {

std::vector<double> scan_neumann_zeros(const Potential& q, Side side, double lambda, double X, double tol,
                                       bool refine) {
  if (!(X > 0.0)) throw ConfigError("oscillation interval length must be positive");
  using Vec = std::array<double, 2>;
  const Potential half = side == Side::plus ? q : q.reflected();
  auto rhs = [&half, lambda](const Vec& y, Vec& dy, double x) {
    dy[0] = y[1];
    dy[1] = (half(x) - lambda) * y[0];
  };
  auto stepper = make_stepper<Vec>(tol);
  // Keeps every step below a quarter of the local wavelength so that no step
  // can jump over two zeros.
  auto step_cap = [&half, lambda](double x) {
    const double k2 = lambda - half(x);
    return k2 > 0.0 ? 0.25 * M_PI / std::sqrt(k2) : 1.0;
  };

  auto advance = [&](Vec& y, double& x, double& dt, double target) {
    while (x < target) {
      double h = std::min({dt, step_cap(x), target - x});
      for (;;) {
        if (stepper.try_step(rhs, y, x, h) == odeint::success) {
          dt = h;
          break;
        }
        if (h < min_step(x)) underflow(x, h);
      }
      const double m = std::max(std::fabs(y[0]), std::fabs(y[1]));
      if (m > kRenormThreshold) {
        y[0] /= m;
        y[1] /= m;
      }
      if (target - x < 1e-15 * std::max(1.0, target)) x = target;
    }
  };

  std::vector<double> zeros;
  Vec y{1.0, 0.0};
  double x = 0.0;
  double dt = std::min(0.05, step_cap(0.0));
  while (x < X) {
    const Vec y_prev = y;
    const double x_prev = x;
    double h = std::min({dt, step_cap(x), X - x});
    for (;;) {
      if (stepper.try_step(rhs, y, x, h) == odeint::success) {
        dt = h;
        break;
      }
      if (h < min_step(x)) underflow(x, h);
    }
    if (X - x < 1e-15 * std::max(1.0, X)) x = X;
    const bool endpoint_zero = y[0] == 0.0 && x < X;
    const bool crossed = (y_prev[0] > 0.0 && y[0] < 0.0) || (y_prev[0] < 0.0 && y[0] > 0.0) || endpoint_zero;
    if (crossed && !refine) {
      zeros.push_back(0.5 * (x_prev + x));
    } else if (crossed) {
      // Bisection on the bracket [x_prev, x], re-integrating from the left end.
      double lo = x_prev, hi = x;
      Vec y_lo = y_prev;
      while (hi - lo > 1e-11 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        Vec ym = y_lo;
        double xm = lo, dm = mid - lo;
        advance(ym, xm, dm, mid);
        if ((ym[0] > 0.0) == (y_lo[0] > 0.0) && ym[0] != 0.0) {
          lo = mid;
          y_lo = ym;
        } else {
          hi = mid;
        }
      }
      const double z = 0.5 * (lo + hi);
      if (z < X) zeros.push_back(z);
    }
    const double m = std::max(std::fabs(y[0]), std::fabs(y[1]));
    if (m > kRenormThreshold) {
      y[0] /= m;
      y[1] /= m;
    }
  }
  if (side == Side::minus) {
    for (auto& z : zeros) z = -z;
  }
  return zeros;
}

}  // namespace

std::vector<double> neumann_zeros(const Potential& q, Side side, double lambda, double X, double tol) {
  return scan_neumann_zeros(q, side, lambda, X, tol, true);
}

int oscillation_count(const Potential& q, Side side, double lambda, double X, double tol) {
  return static_cast<int>(scan_neumann_zeros(q, side, lambda, X, tol, false).size());
}

}  // namespace indefsl::ode
