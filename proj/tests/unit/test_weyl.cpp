#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "indefsl/cli/parse.hpp"
#include "indefsl/ode.hpp"
#include "indefsl/weyl.hpp"

using namespace indefsl;
using Complex = std::complex<double>;

namespace {

// q ≡ c on both sides: m_±(λ) = i / sqrt(λ - c).
Complex m_const(double c, Complex lambda) { return Complex(0, 1) / ode::sqrt_upper(lambda - c); }

// 50 points, 25 in each half plane, away from the real axis.
std::vector<Complex> lambda_grid() {
  std::vector<Complex> g;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      const Complex z(-6.0 + 3.0 * i, 0.15 * std::pow(3.0, j));
      g.push_back(z);
      g.push_back(std::conj(z));
    }
  return g;
}

}  // namespace

TEST_CASE("Weyl disk for the free equation") {
  const auto q0 = Potential::constant(0.0);
  const auto d = weyl::weyl_disk(q0, Side::plus, Complex(0, 1), 20.0);
  CHECK(std::abs(d.center - std::polar(1.0, std::numbers::pi / 4)) < 1e-6);
  CHECK(d.radius < 1e-8);
  CHECK(d.X == 20.0);
}

TEST_CASE("q = 1 disk centre approaches i/sqrt(2i - 1)") {
  const auto q1 = Potential::constant(1.0);
  const Complex lam(0, 2), exact = m_const(1.0, lam);
  double prev = 1e300;
  for (double X : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    const auto d = weyl::weyl_disk(q1, Side::plus, lam, X);
    const double err = std::abs(d.center - exact);
    CHECK(err <= d.radius * (1 + 1e-9) + 1e-12);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("disks nest") {
  const Potential qs[] = {Potential::constant(0.0), cli::parse_potential("-1/(1+abs(x))"),
                          cli::parse_potential("-x"), cli::parse_potential("x^2")};
  for (const auto& q : qs)
    for (Side side : {Side::plus, Side::minus})
      for (Complex lam : {Complex(1, 1), Complex(-2, 0.5), Complex(0.5, -1)}) {
        weyl::WeylDisk prev{};
        bool first = true;
        for (double X : {0.5, 1.0, 2.0, 4.0, 8.0}) {
          const auto d = weyl::weyl_disk(q, side, lam, X);
          if (!first) {
            CHECK(d.radius <= prev.radius * (1 + 1e-9));
            CHECK(std::abs(d.center - prev.center) <= prev.radius * (1 + 1e-6) + 1e-13);
          }
          prev = d;
          first = false;
        }
      }
}

TEST_CASE("m coefficients match closed forms") {
  const auto q0 = Potential::constant(0.0);
  const auto m = weyl::m_coefficient(q0, Side::plus, Complex(0, 1), 1e-8);
  CHECK(std::abs(m.value - std::polar(1.0, std::numbers::pi / 4)) <= 1e-8);
  CHECK(m.error_bound <= 1e-8);
  CHECK(m.kind == weyl::Kind::little_m);

  const auto mm = weyl::m_coefficient(q0, Side::minus, Complex(0, 1), 1e-8);
  CHECK(std::abs(mm.value - m.value) <= 2e-8);

  for (double c : {-1.0, 0.0, 1.0, 5.0})
    for (Complex lam : {Complex(1, 1), Complex(-3, 0.2), Complex(2, -0.5)}) {
      const auto v = weyl::m_coefficient(Potential::constant(c), Side::plus, lam, 1e-9);
      CHECK(std::abs(v.value - m_const(c, lam)) <= 1e-8);
    }
}

TEST_CASE("M from m") {
  const auto q = cli::parse_potential("-1/(1+abs(x))");
  const Complex lam(0.3, 0.8);
  const auto Mp = weyl::big_M(q, Side::plus, lam, 1e-9);
  const auto mp = weyl::m_coefficient(q, Side::plus, lam, 1e-9);
  CHECK(std::abs(Mp.value - mp.value) <= 2e-9);
  const auto Mm = weyl::big_M(q, Side::minus, lam, 1e-9);
  const auto mm = weyl::m_coefficient(q, Side::minus, -lam, 1e-9);
  CHECK(std::abs(Mm.value + mm.value) <= 2e-9);
  CHECK(Mm.kind == weyl::Kind::big_M);

  const auto v = weyl::m_coefficient(q, Side::plus, Complex(1, 1), 1e-6);
  CHECK(v.value.imag() > 0.0);
}

TEST_CASE("Herglotz property on a 50-point grid") {
  const Potential qs[] = {Potential::constant(0.0), Potential::constant(1.0), cli::parse_potential("-1/(1+abs(x))"),
                          cli::parse_potential("-x"), cli::parse_potential("x^2")};
  const auto grid = lambda_grid();
  REQUIRE(grid.size() == 50);
  int checked = 0;
  for (const auto& q : qs)
    for (Side side : {Side::plus, Side::minus})
      for (Complex lam : grid) {
        const auto m = weyl::m_coefficient(q, side, lam, 1e-7);
        CHECK(lam.imag() * m.value.imag() >= -m.error_bound);
        const auto M = weyl::big_M(q, side, lam, 1e-7);
        CHECK(lam.imag() * M.value.imag() >= -M.error_bound);
        ++checked;
      }
  CHECK(checked == 500);
}

TEST_CASE("conjugation symmetry of m") {
  const auto q = cli::parse_potential("-x + 0.5*sin(x)");
  for (Side side : {Side::plus, Side::minus})
    for (Complex lam : {Complex(1, 1), Complex(-2, 0.3), Complex(4, 2)}) {
      const auto a = weyl::m_coefficient(q, side, lam, 1e-8);
      const auto b = weyl::m_coefficient(q, side, std::conj(lam), 1e-8);
      CHECK(std::abs(a.value - std::conj(b.value)) <= 2 * std::max(a.error_bound, b.error_bound) + 1e-14);
    }
}

TEST_CASE("even potentials have m_+ = m_-") {
  const auto q = cli::parse_potential("-3*exp(-x^2)");
  for (Complex lam : {Complex(1, 1), Complex(-1, 0.5)}) {
    const auto a = weyl::m_coefficient(q, Side::plus, lam, 1e-9);
    const auto b = weyl::m_coefficient(q, Side::minus, lam, 1e-9);
    CHECK(std::abs(a.value - b.value) <= 2e-9);
  }
}

TEST_CASE("norm identity") {
  const Complex sample[] = {{1, 1}, {0, 2}, {-1, 1}, {3, 0.5}, {-4, 2}, {1, -1}, {0, -2}, {-1, -1}, {0.2, 3}, {5, 1}};
  for (double c : {0.0, 1.0})
    for (Side side : {Side::plus, Side::minus})
      for (Complex lam : sample)
        CHECK(weyl::weyl_solution_norm_check(Potential::constant(c), side, lam, 1e-9) <= 1e-3);
  CHECK(weyl::weyl_solution_norm_check(Potential::constant(0.0), Side::plus, Complex(1, 1), 1e-9) <= 1e-4);
  CHECK(weyl::weyl_solution_norm_check(Potential::constant(0.0), Side::minus, Complex(0, 1), 1e-9) <= 1e-4);
  CHECK(weyl::weyl_solution_norm_check(cli::parse_potential("-1/(1+abs(x))"), Side::plus, Complex(1, 1), 1e-9) <=
        1e-3);
}

TEST_CASE("asymptotics for a compactly supported bump") {
  const auto q = cli::parse_potential("max(0, 1 - x^2)");
  for (Side side : {Side::plus, Side::minus}) {
    const double sg = sign_of(side);
    std::vector<double> dev, scaled;
    for (double R : {1e2, 1e3, 1e4}) {
      double worst = 0.0;
      for (double theta : {0.2, 0.8, std::numbers::pi / 2, 2.3, 2.9}) {
        const Complex lam = std::polar(R, theta);
        const auto M = weyl::big_M(q, side, lam, 1e-10);
        const Complex v = ode::sqrt_upper(sg * lam) * M.value / (sg * Complex(0, 1));
        worst = std::max(worst, std::abs(v - 1.0));
      }
      dev.push_back(worst);
      scaled.push_back(worst * std::sqrt(R));
    }
    CHECK(dev[0] > dev[1]);
    CHECK(dev[1] > dev[2]);
    CHECK(scaled[1] <= scaled[0] * 1.5);
    CHECK(scaled[2] <= scaled[0] * 1.5);
  }
}

TEST_CASE("errors") {
  const auto q0 = Potential::constant(0.0);
  CHECK_THROWS_AS((void)weyl::m_coefficient(q0, Side::plus, 1.0, 1e-8), ConfigError);
  CHECK_THROWS_AS((void)weyl::m_coefficient(q0, Side::plus, Complex(0, 1), 0.0), ConfigError);
  CHECK_THROWS_AS((void)weyl::weyl_disk(q0, Side::plus, Complex(0, 1), -1.0), ConfigError);
  weyl::Options tight;
  tight.X_max = 8.0;
  CHECK_THROWS_AS((void)weyl::m_coefficient(q0, Side::plus, Complex(0, 1e-3), 1e-12, tight), NumericalError);
}
