#include <doctest.h>

#include <random>

#include "indefsl/error.hpp"
#include "indefsl/sets.hpp"

using namespace indefsl;
using namespace indefsl::sets;

namespace {

SpectralSet half_line(double lo) { return {{closed(lo, inf)}, {}, {}}; }

// Random finite unions on a small integer lattice so that endpoints collide often.
ExtendedRealSet random_set(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(-4, 4), coin(0, 1), count(0, 3);
  std::vector<Interval> parts;
  for (int n = count(rng); n > 0; --n) {
    int a = pick(rng), b = pick(rng);
    if (a > b) std::swap(a, b);
    double lo = a, hi = b;
    if (coin(rng) && coin(rng)) lo = -inf;
    if (coin(rng) && coin(rng)) hi = inf;
    parts.push_back({lo, hi, lo == hi || coin(rng) == 1, lo == hi || coin(rng) == 1});
  }
  return {parts, coin(rng) == 1};
}

}  // namespace

TEST_CASE("interval basics and normalisation") {
  CHECK(open(1, 1).empty());
  CHECK_FALSE(point(2).empty());
  CHECK(closed(0, 1).contains(1));
  CHECK_FALSE(open(0, 1).contains(1));

  const ExtendedRealSet a({closed(0, 1), closed(1, 2), point(5), open(4, 5)}, false);
  CHECK(a.to_string() == "[0, 2] ∪ (4, 5]");
  CHECK(ExtendedRealSet().to_string() == "∅");
  CHECK(ExtendedRealSet::infinity_only().to_string() == "{∞}");
  CHECK(ExtendedRealSet({point(0)}, false).points() == std::vector<double>{0.0});
}

TEST_CASE("set algebra identities on random sets") {
  std::mt19937 rng(7);
  const double probes[] = {-inf, -4.5, -4, -3.5, -1, -0.5, 0, 0.5, 1, 2, 3.5, 4, 4.5, inf};
  for (int i = 0; i < 300; ++i) {
    const auto a = random_set(rng), b = random_set(rng);
    CHECK(a.complement().complement() == a);
    CHECK(a.unite(b).complement() == a.complement().intersect(b.complement()));
    CHECK(a.intersect(b) == b.intersect(a));
    CHECK(a.negated().negated() == a);
    CHECK(a.minus(a).empty());
    for (double x : probes) {
      if (std::isinf(x)) continue;
      CHECK(a.unite(b).contains(x) == (a.contains(x) || b.contains(x)));
      CHECK(a.intersect(b).contains(x) == (a.contains(x) && b.contains(x)));
      CHECK(a.complement().contains(x) == !a.contains(x));
      CHECK(a.negated().contains(-x) == a.contains(x));
    }
    CHECK(a.unite(b).has_infinity() == (a.has_infinity() || b.has_infinity()));
  }
  CHECK(ExtendedRealSet::everything().complement().empty());
}

TEST_CASE("spectral set closure and sigma left/right") {
  const SpectralSet s{{closed(1, 3)}, {-2, 5}, {{0, Approach::from_below}, {inf, Approach::from_below}}};
  s.validate();
  const auto cl = s.closure();
  CHECK(cl.contains(-2));
  CHECK(cl.contains(0));
  CHECK(cl.contains(2));
  CHECK(cl.has_infinity());
  CHECK_FALSE(cl.contains(4));

  const auto left = sigma_left(s);
  CHECK(left == ExtendedRealSet({{1, 3, false, true}, point(0)}, true));
  const auto right = sigma_right(s);
  CHECK(right == ExtendedRealSet({{1, 3, true, false}}, false));

  CHECK(s.bounded_below());
  CHECK_FALSE(s.bounded_above());
  CHECK(s.infimum() == -2.0);
  CHECK(half_line(1).infimum() == 1.0);

  const auto n = s.negated();
  CHECK(sigma_left(n) == ExtendedRealSet({{-3, -1, false, true}}, false));
  CHECK(sigma_right(n) == ExtendedRealSet({{-3, -1, true, false}, point(0)}, true));
}

TEST_CASE("malformed spectral sets are rejected") {
  CHECK_THROWS_AS(SpectralSet({{closed(1, 1)}, {}, {}}).validate(), ConfigError);
  CHECK_THROWS_AS(SpectralSet({{}, {inf}, {}}).validate(), ConfigError);
  CHECK_THROWS_AS(SpectralSet({{}, {}, {{inf, Approach::from_above}}}).validate(), ConfigError);
  CHECK_THROWS_AS(SpectralSet({{}, {}, {{-inf, Approach::from_below}}}).validate(), ConfigError);
}

TEST_CASE("separation examples") {
  SUBCASE("[1, inf) and (-inf, -1]") {
    const auto sep = separation_check(half_line(1), half_line(1).negated());
    REQUIRE(sep.separable);
    REQUIRE(sep.alphas.size() == 1);
    CHECK(sep.alphas[0] >= -1);
    CHECK(sep.alphas[0] <= 1);
  }
  SUBCASE("[-1, inf) and (-inf, 1]") {
    const auto sep = separation_check(half_line(-1), half_line(-1).negated());
    CHECK_FALSE(sep.separable);
    REQUIRE(sep.witness_point.has_value());
    CHECK(*sep.witness_point >= -1);
    CHECK(*sep.witness_point <= 1);
  }
  SUBCASE("two-sided accumulation at 0") {
    SpectralSet p{{closed(1, inf)}, {-0.05, 0.01}, {{0, Approach::from_below}, {0, Approach::from_above}}};
    const auto sep = separation_check(p, p.negated());
    CHECK_FALSE(sep.separable);
    REQUIRE(sep.witness_point.has_value());
    CHECK(*sep.witness_point == 0.0);
  }
  SUBCASE("the real line on both sides") {
    const SpectralSet all{{closed(-inf, inf)}, {}, {}};
    CHECK_FALSE(separation_check(all, all).separable);
  }
  SUBCASE("interleaved points need several alphas") {
    const SpectralSet p{{closed(10, inf)}, {-3, 1}, {}};
    const SpectralSet m{{closed(-inf, -10)}, {-1, 3}, {}};
    const auto sep = separation_check(p, m);
    REQUIRE(sep.separable);
    CHECK(std::is_sorted(sep.alphas.begin(), sep.alphas.end()));
    // Set `parity` (1 or 2) must lie in the closed bands [α_k, α_{k+1}] with k even when it is first_even.
    auto in_bands = [&](double x, bool even) {
      std::vector<double> a{-inf};
      a.insert(a.end(), sep.alphas.begin(), sep.alphas.end());
      a.push_back(inf);
      for (std::size_t k = 0; k + 1 < a.size(); ++k)
        if ((k % 2 == 0) == even && a[k] <= x && x <= a[k + 1]) return true;
      return false;
    };
    for (double x : {-3.0, 1.0, 10.0, 50.0}) CHECK(in_bands(x, sep.first_even == 1));
    for (double x : {-1.0, 3.0, -10.0, -50.0}) CHECK(in_bands(x, sep.first_even == 2));
    for (double x : {-2.0, 0.0, 2.0, 5.0}) CHECK_FALSE((in_bands(x, sep.first_even == 1) && in_bands(x, sep.first_even == 2)));
  }
}

TEST_CASE("separation is symmetric up to parity") {
  const SpectralSet p{{closed(10, inf)}, {-3, 1}, {}};
  const SpectralSet m{{closed(-inf, -10)}, {-1, 3}, {}};
  const auto a = separation_check(p, m), b = separation_check(m, p);
  CHECK(a.separable == b.separable);
  CHECK(a.alphas == b.alphas);
  CHECK(a.first_even != b.first_even);

  const SpectralSet q1{{closed(-1, inf)}, {}, {}};
  CHECK(separation_check(q1, q1.negated()).separable == separation_check(q1.negated(), q1).separable);
}

TEST_CASE("point types match set differences") {
  const SpectralSet p{{closed(-1, inf)}, {-3}, {}};
  const SpectralSet m = SpectralSet{{closed(-2, inf)}, {}, {}}.negated();
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    const bool in_p = p.contains(x), in_m = m.contains(x);
    const auto t = point_type(p, m, x);
    CHECK((t == PointType::positive) == (in_p && !in_m));
    CHECK((t == PointType::negative) == (in_m && !in_p));
    CHECK((t == PointType::both) == (in_m && in_p));
    CHECK((t == PointType::resolvent) == (!in_m && !in_p));
  }
  CHECK(std::string(to_string(PointType::both)) == "both");
}
