#include "indefsl/weyl.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

#include "indefsl/error.hpp"

namespace indefsl::weyl {

namespace odeint = boost::numeric::odeint;

const char* to_string(Kind k) { return k == Kind::little_m ? "little_m" : "big_M"; }

namespace {

void require_nonreal(Complex lambda) {
  if (lambda.imag() == 0.0) throw ConfigError(fmt::format("lambda = {}+{}i must be non-real", lambda.real(), lambda.imag()));
}

const Potential& oriented(const Potential& q, Side side, Potential& storage) {
  if (side == Side::plus) return q;
  storage = q.reflected();
  return storage;
}

}  // namespace

WeylDisk disk_from_propagator(const ode::FundamentalPropagator& prop) {
  const auto& v = prop.scaled();
  const Complex c = v[0], cp = v[1], s = v[2], sp = v[3];
  // m(z) = (s z + s') / (c z + c') over real z; the centre is the image of the
  // conjugate of the pole, the radius |det| / |c conj(c') - conj(c) c'|.
  const Complex denom = cp * std::conj(c) - c * std::conj(cp);
  WeylDisk d;
  d.X = prop.position();
  d.center = (sp * std::conj(c) - s * std::conj(cp)) / denom;
  d.radius = std::exp(-2.0 * prop.log_scale()) / std::abs(denom);
  return d;
}

WeylDisk weyl_disk(const Potential& q, Side side, Complex lambda, double X, double integrator_tol) {
  require_nonreal(lambda);
  if (!(X > 0.0)) throw ConfigError("truncation length X must be positive");
  Potential storage;
  ode::FundamentalPropagator prop(oriented(q, side, storage), lambda, integrator_tol);
  prop.advance_to(X);
  return disk_from_propagator(prop);
}

MValue m_coefficient(const Potential& q, Side side, Complex lambda, double tol, const Options& opt) {
  require_nonreal(lambda);
  if (!(tol > 0.0)) throw ConfigError("m-coefficient tolerance must be positive");
  Potential storage;
  ode::FundamentalPropagator prop(oriented(q, side, storage), lambda, opt.integrator_tol);
  double X = opt.X_start;
  double last_radius = std::numeric_limits<double>::infinity();
  for (;;) {
    prop.advance_to(X);
    const WeylDisk d = disk_from_propagator(prop);
    if (!std::isfinite(d.radius) || !std::isfinite(d.center.real()) || !std::isfinite(d.center.imag()))
      throw NumericalError(fmt::format("Weyl disk degenerated at X = {}", X));
    if (d.radius <= tol) return MValue{lambda, d.center, d.radius, side, Kind::little_m, X};
    if (d.radius >= last_radius || 2.0 * X > opt.X_max) {
      throw NumericalError(fmt::format(
          "limit-point assumption violated or tolerance unreachable: Weyl radius {:.3g} at X = {} (tol {:.3g}, "
          "lambda = {}+{}i)",
          d.radius, X, tol, lambda.real(), lambda.imag()));
    }
    last_radius = d.radius;
    X *= 2.0;
  }
}

MValue big_M(const Potential& q, Side side, Complex lambda, double tol, const Options& opt) {
  const double sgn = sign_of(side);
  MValue m = m_coefficient(q, side, sgn * lambda, tol, opt);
  m.lambda = lambda;
  m.value *= sgn;
  m.kind = Kind::big_M;
  return m;
}

double weyl_solution_norm_check(const Potential& q, Side side, Complex lambda, double tol, const Options& opt) {
  require_nonreal(lambda);
  const MValue M = big_M(q, side, lambda, std::min(1e-12, tol), opt);
  const double expected = M.value.imag() / lambda.imag();
  if (!(expected > 0.0)) throw NumericalError("Im M / Im lambda is not positive");

  // psi = s_mu - m(mu) c_mu in plus orientation with mu = ±lambda; the minus
  // side differs from this by an overall sign, which the norm ignores.
  Potential storage;
  const Potential& half = oriented(q, side, storage);
  const Complex mu = sign_of(side) * lambda;
  const Complex m = sign_of(side) * M.value;

  using Vec = std::array<Complex, 3>;  // psi, psi', running integral of |psi|^2
  auto rhs = [&half, mu](const Vec& y, Vec& dy, double x) {
    dy[0] = y[1];
    dy[1] = (half(x) - mu) * y[0];
    dy[2] = std::norm(y[0]);
  };
  auto stepper = odeint::make_controlled(
      opt.integrator_tol, opt.integrator_tol,
      odeint::runge_kutta_fehlberg78<Vec, double, Vec, double, odeint::array_algebra>());

  Vec y{-m, Complex{1.0}, Complex{0.0}};
  const double start_size = std::norm(y[0]) + std::norm(y[1]);
  double x = 0.0;
  double dt = 1e-3;
  const double chunk = 0.5;
  for (;;) {
    const double target = x + chunk;
    while (x < target) {
      double h = std::min(dt, target - x);
      const bool clipped = h < dt;
      for (;;) {
        if (stepper.try_step(rhs, y, x, h) == odeint::success) {
          if (!clipped) dt = h;
          break;
        }
        if (h < 1e-13 * std::max(1.0, x)) throw IntegrationError("step size underflow in norm quadrature", x);
      }
      if (target - x < 1e-15 * std::max(1.0, target)) x = target;
    }
    const double size = std::norm(y[0]) + std::norm(y[1]) / (1.0 + std::abs(mu));
    if (size > 1e6 * start_size || x > opt.X_max)
      throw NumericalError("Weyl solution tail is not decaying; M value inconsistent with potential");
    const double kappa = std::max(1e-3, ode::sqrt_upper(mu - half(x)).imag());
    const double tail = size / (2.0 * kappa);
    // Stop well before the growing solution, excited by the error in m, takes over.
    if (tail < 1e-8 * y[2].real()) break;
  }
  const double computed = y[2].real();
  return std::fabs(computed - expected) / expected;
}

}  // namespace indefsl::weyl
