#include <doctest.h>

#include <cmath>
#include <complex>

#include "indefsl/cli/parse.hpp"
#include "indefsl/ode.hpp"
#include "indefsl/spectrum.hpp"

using namespace indefsl;
using Complex = std::complex<double>;

namespace {

// q ≡ c: M_+(λ) = i/sqrt(λ - c), M_-(λ) = -i/sqrt(-λ - c).
Complex D_const(double c, Complex lam) {
  const Complex i(0, 1);
  return i / ode::sqrt_upper(lam - c) + i / ode::sqrt_upper(-lam - c);
}

const char* kWell = "-20/(1+exp((abs(x)-1)/0.05))";

}  // namespace

TEST_CASE("dispersion closed forms") {
  for (double c : {0.0, 1.0, -1.0})
    for (Complex lam : {Complex(0, 1), Complex(1, 1), Complex(-2, 0.3), Complex(0.5, -2)}) {
      const Complex d = spectrum::dispersion(Potential::constant(c), lam, 1e-10);
      CHECK(std::abs(d - D_const(c, lam)) <= 3e-10);
    }
  CHECK(std::abs(spectrum::dispersion(Potential::constant(0.0), Complex(0, 1), 1e-10)) > 0.1);
  CHECK(std::abs(spectrum::dispersion(Potential::constant(1.0), Complex(1, 1), 1e-10)) > 0.1);
}

TEST_CASE("no non-real eigenvalues for q = c >= 0") {
  CHECK(spectrum::count_nonreal(Potential::constant(1.0), {-5, 5, 0.1, 5}, 1e-6) == 0);
  for (double c : {0.0, 0.5, 1.0, 3.0})
    for (spectrum::Rect r : {spectrum::Rect{-10, 10, 0.1, 10}, spectrum::Rect{-1, 2, 0.01, 0.5},
                             spectrum::Rect{-10, 10, -10, -0.1}, spectrum::Rect{3, 4, 2, 3}})
      CHECK(spectrum::count_nonreal(Potential::constant(c), r, 1e-6) == 0);
  const auto set = spectrum::locate_nonreal(Potential::constant(1.0), {-5, 5, 0.1, 5}, 1e-10);
  CHECK(set.points.empty());
  CHECK(set.method == spectrum::Method::contour);
}

TEST_CASE("axis scan is empty for constant potentials") {
  CHECK(spectrum::axis_scan(Potential::constant(0.0), 1e-3, 10.0, 60).empty());
  CHECK(spectrum::axis_scan(Potential::constant(-1.0), 1e-2, 1.0, 60).empty());
}

TEST_CASE("axis scan and contour agree for an even well") {
  const auto q = cli::parse_potential(kWell);
  const auto roots = spectrum::axis_scan(q, 1e-2, 30.0, 60, 1e-8);
  REQUIRE(roots.size() == 1);
  for (double eps : roots) {
    // D(iε) = 2 Re M_+(iε) for even q.
    CHECK(std::abs(spectrum::dispersion(q, Complex(0, eps), 1e-10)) < 1e-6);
  }
  const spectrum::Rect rect{-1, 1, 0.05, 100};
  const int n = spectrum::count_nonreal(q, rect, 1e-6);
  const int m = spectrum::count_nonreal(q, rect.conjugate(), 1e-6);
  CHECK(n == static_cast<int>(roots.size()));
  CHECK(n + m == 2 * static_cast<int>(roots.size()));

  const auto set = spectrum::locate_nonreal(q, rect, 1e-10);
  REQUIRE(set.points.size() == 2 * roots.size());
  CHECK(spectrum::closed_under_conjugation(set, 1e-8));
  for (double eps : roots) {
    bool found = false;
    for (const auto& p : set.points)
      if (std::abs(p.value - Complex(0, eps)) <= 1e-6) found = true;
    CHECK(found);
  }
  for (const auto& p : set.points) {
    CHECK(p.value.imag() != 0.0);
    CHECK(p.residual <= 1e-8);
  }
}

TEST_CASE("off-axis eigenvalues come in conjugate pairs, and mirror pairs for even q") {
  const auto q = cli::parse_potential(kWell);
  const spectrum::Rect wide{-30, 30, 0.05, 100};
  const auto set = spectrum::locate_nonreal(q, wide, 1e-10);
  CHECK(static_cast<int>(set.points.size()) == 2 * spectrum::count_nonreal(q, wide, 1e-6));
  CHECK(spectrum::closed_under_conjugation(set, 1e-8));
  // For even q, D(-λ̄) = -conj D(λ): the zero set is symmetric about iℝ.
  for (const auto& p : set.points) {
    bool mirrored = false;
    for (const auto& o : set.points)
      if (std::abs(o.value + std::conj(p.value)) <= 1e-6) mirrored = true;
    CHECK(mirrored);
  }
}

TEST_CASE("q = -1 has no non-real eigenvalues either") {
  // D(λ) = i/√(λ+1) + i/√(1-λ) vanishes nowhere off ℝ.
  CHECK(spectrum::count_nonreal(Potential::constant(-1.0), {-5, 5, 0.1, 5}, 1e-6) == 0);
}

TEST_CASE("errors") {
  const auto q0 = Potential::constant(0.0);
  CHECK_THROWS_AS((void)spectrum::count_nonreal(q0, {-1, 1, -1, 1}, 1e-6), ConfigError);
  CHECK_THROWS_AS((void)spectrum::count_nonreal(q0, {-1, 1, 1e-4, 1}, 1e-6), ConfigError);
  CHECK_THROWS_AS((void)spectrum::count_nonreal(q0, {1, -1, 0.5, 1}, 1e-6), ConfigError);
  CHECK_THROWS_AS((void)spectrum::axis_scan(cli::parse_potential("-x"), 0.1, 1, 10), ConfigError);
  CHECK_THROWS_AS((void)spectrum::axis_scan(q0, 1, 0.1, 10), ConfigError);

  const auto q = cli::parse_potential(kWell);
  const auto roots = spectrum::axis_scan(q, 1, 30.0, 40, 1e-12);
  REQUIRE(roots.size() == 1);
  // Boundary through the eigenvalue.
  CHECK_THROWS_AS((void)spectrum::count_nonreal(q, {-1, 1, roots[0], 20}, 1e-6), NumericalError);
}

TEST_CASE("Rect helpers") {
  const spectrum::Rect r{-1, 2, 0.5, 3};
  CHECK(r.contains({0, 1}));
  CHECK_FALSE(r.contains({0, 0.4}));
  CHECK(r.conjugate().contains({0, -1}));
  CHECK(std::string(spectrum::to_string(spectrum::Method::axis_scan)) == "axis_scan");

  spectrum::EigenvalueSet s;
  s.points = {{Complex(1, 1)}, {Complex(1, -1)}};
  CHECK(spectrum::closed_under_conjugation(s, 1e-12));
  s.points.pop_back();
  CHECK_FALSE(spectrum::closed_under_conjugation(s, 1e-12));
}
