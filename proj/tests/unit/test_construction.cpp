#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "indefsl/construction.hpp"
#include "indefsl/error.hpp"

using namespace indefsl;
using namespace indefsl::construction;
using std::numbers::pi;

namespace {

StepDensityMeasure one_atom(double s) {
  StepDensityMeasure m;
  m.atoms = {{s, 1.0 / pi}};
  m.tail_mass = 1.0 / pi;
  return m;
}

const StepDensityMeasure& k5() {
  static const StepDensityMeasure m = build_measure(5);
  return m;
}

}  // namespace

TEST_CASE("weights") {
  CHECK(atom_weight(1) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(atom_weight(3) == doctest::Approx(0.25 / pi).epsilon(1e-15));
  double partial = 0.0;
  for (int k = 1; k <= 40; ++k) {
    partial += atom_weight(k);
    CHECK(partial <= 2.0 / pi * (1 + 1e-15));
    CHECK(std::abs(partial + tail_weight(k) - 2.0 / pi) < 1e-15);
  }
}

TEST_CASE("continuous part: closed form against quadrature") {
  CHECK(std::abs(r_cont(0.0) - 2.0 / pi) < 1e-15);
  for (double e : {1e-8, 1e-4, 0.01, 0.1, 0.3, 0.49, 0.5, 0.51, 0.9, 1.0, 2.0, 7.5, 30.0, 1e3})
    CHECK(std::abs(r_cont(e) - r_cont_quadrature(e)) <= 1e-10);
  // Positive and decreasing.
  double prev = r_cont(0.0);
  for (double e = 0.01; e < 50; e *= 1.3) {
    const double v = r_cont(e);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("r examples") {
  StepDensityMeasure empty;
  empty.tail_mass = 0.0;
  CHECK(std::abs(r_eval(empty, 0.0) - 2.0 / pi) < 1e-15);

  const auto m = one_atom(-0.05);
  CHECK(std::abs(r_eval(m, 0.05) - (r_cont(0.05) - 10.0 / pi)) < 1e-12);

  // Vector and scalar agree; r is continuous.
  std::vector<double> eps, out(200);
  for (int i = 0; i < 200; ++i) eps.push_back(0.001 * (i + 1));
  r_eval(k5(), eps, out);
  for (int i = 0; i < 200; ++i) CHECK(out[i] == doctest::Approx(r_eval(k5(), eps[i])).epsilon(1e-14));
  for (double e : {1e-3, 0.02, 0.7}) {
    const double h = 1e-9 * e;
    CHECK(std::abs(r_eval(k5(), e + h) - r_eval(k5(), e)) < 1e-4);
  }
  CHECK_THROWS_AS((void)r_eval(m, -1.0), ConfigError);
}

TEST_CASE("SUP estimates") {
  StepDensityMeasure empty;
  empty.tail_mass = 2.0 / pi;
  const auto s0 = sup_estimate(empty);
  CHECK(std::abs(s0.sampled - 2.0 / pi) < 1e-12);
  CHECK(s0.bound >= s0.sampled);
  CHECK(s0.bound - s0.sampled < 1e-3);

  const auto s1 = sup_estimate(one_atom(-0.05));
  CHECK(s1.sampled >= 10.0 / pi - 2.0 / pi);
  CHECK(s1.bound >= s1.sampled);

  // Nested refinement: the sampled maximum can only grow, and never passes the bound.
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto p = k5().prefix(n);
    double prev_sampled = 0.0, coarse_bound = 0.0;
    for (int cells : {2500, 5000, 10000, 20000}) {
      const auto s = sup_estimate(p, SupGrid{cells, cells, 10.0});
      CHECK(s.sampled >= prev_sampled);
      CHECK(s.bound >= s.sampled);
      if (coarse_bound > 0.0) CHECK(coarse_bound >= s.sampled);
      prev_sampled = s.sampled;
      coarse_bound = s.bound;
    }
  }
}

TEST_CASE("K = 5 measure") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = build_measure(5);
  REQUIRE(m.size() == 5);
  REQUIRE(m.aux.size() == 5);
  double mass = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const int k = static_cast<int>(i) + 1;
    const auto& a = m.atoms[i];
    CHECK(a.h == atom_weight(k));
    mass += a.h;
    CHECK(mass <= 2.0 / pi);
    CHECK((k % 2 == 1 ? a.s < 0.0 : a.s > 0.0));
    CHECK(std::abs(a.s) < 1.0);
    if (i > 0) {
      CHECK(std::abs(a.s) < std::abs(m.atoms[i - 1].s) / 2);
      CHECK(std::abs(a.s) < m.aux[i - 1].b);
    }
    const auto& rec = m.aux[i];
    CHECK(rec.k == k);
    CHECK(rec.margin > 1.0);
    CHECK(rec.sup_bound >= rec.sup_sampled);
    // Atoms placed later cannot undo the sign at |s_k|.
    CHECK(rec.b * tail_weight(k) / (a.s * a.s) < rec.margin);
  }
  CHECK(std::abs(mass + m.tail_mass - 2.0 / pi) < 1e-15);
  CHECK(std::abs(m.atoms[0].s + 0.0486) < 1e-3);

  for (const auto& c : verify_sign_pattern(m)) {
    CHECK(c.ok);
    CHECK((c.k % 2 == 1 ? c.value < 0.0 : c.value > 0.0));
    CHECK(std::abs(c.value) > c.tail_bound);
    CHECK(r_eval(m, std::abs(m.atoms[c.k - 1].s)) == c.value);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 5.0);
}

TEST_CASE("mass identities") {
  const auto& m = k5();
  CHECK(cumulative_mass(m, -1.0) == 0.0);
  CHECK(cumulative_mass(m, -5.0) == 0.0);
  for (double s : {2.0, 4.0, 9.0, 1.5, 100.0}) CHECK(std::abs(cumulative_mass(m, s) - 2.0 / pi * std::sqrt(s)) <= 1e-8);
  // Nondecreasing where defined.
  double prev = 0.0;
  for (double s : {-0.9, -0.5, -0.06, -0.01, 0.01, 0.5, 1.0, 1.2, 3.0}) {
    const double v = cumulative_mass(m, s);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS((void)cumulative_mass(m, 0.0), ConfigError);
}

TEST_CASE("zeros of r") {
  const auto& m = k5();
  const auto z = find_zero_sequence(m);
  REQUIRE(z.eps.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    const double lo = std::abs(m.atoms[i + 1].s), hi = std::abs(m.atoms[i].s);
    CHECK(z.brackets[i].first == lo);
    CHECK(z.brackets[i].second == hi);
    CHECK(z.eps[i] > lo);
    CHECK(z.eps[i] < hi);
    CHECK(z.residual[i] <= 1e-10);
    CHECK(std::abs(r_eval(m, z.eps[i])) <= 1e-10);
    const double d = std::min(1e-9, 0.01 * z.eps[i]);
    CHECK(r_eval(m, z.eps[i] - d) * r_eval(m, z.eps[i] + d) < 0.0);
    if (i > 0) CHECK(z.eps[i] < z.eps[i - 1]);
  }
  CHECK(z.eps.back() < std::abs(m.atoms[3].s));
  CHECK_THROWS_AS((void)find_zero_sequence(m.prefix(1)), ConfigError);
}

TEST_CASE("certificate") {
  const auto& m = k5();
  const auto cert = certify_theorem(m, find_zero_sequence(m));
  CHECK(cert.valid);
  REQUIRE(cert.clauses.size() == 4);
  for (const auto& c : cert.clauses) CHECK_MESSAGE(c.passed, c.id << ": " << c.detail);
  CHECK(cert.S_A == sets::ExtendedRealSet({sets::point(0)}, false));
  CHECK(cert.omega_description == "ℂ̄ \\ {0}");

  const auto sigma = model_spectrum(m);
  CHECK(sigma.contains(m.atoms[0].s));
  CHECK(sigma.contains(2.0));
  CHECK_FALSE(sigma.contains(-2.0));

  // A tampered zero sequence fails clause b.
  auto z = find_zero_sequence(m);
  z.eps[1] *= 1.01;
  const auto bad = certify_theorem(m, z);
  CHECK_FALSE(bad.valid);
}

TEST_CASE("build limits") {
  CHECK_THROWS_AS((void)build_measure(0), ConfigError);
  CHECK_THROWS_AS((void)build_measure(21), ConfigError);
  const auto m8 = build_measure(8);
  CHECK(m8.size() == 8);
  CHECK(find_zero_sequence(m8).eps.size() == 7);
}
