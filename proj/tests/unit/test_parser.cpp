#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "indefsl/cli/parse.hpp"

using namespace indefsl;
using namespace indefsl::cli;

namespace {

const std::vector<std::string> kCorpus = {
    "0",
    "1",
    "-x",
    "x",
    "-1/(1+abs(x))",
    "2^3^2",
    "-2^2",
    "2^-1",
    "x^2",
    "-x^2 + 3*x - 1",
    "1e-3*x",
    "2.5E+2 - .5",
    "sgn(x)*abs(x)",
    "exp(-x^2)",
    "-20/(1+exp((abs(x)-1)/0.05))",
    "sin(x)/(1+x^2)",
    "cos(3*x) - sin(x)^2",
    "sqrt(1+x^2)",
    "min(x, 1)",
    "max(0, 1 - x^2)",
    "min(max(x, -1), 1)",
    "((x))",
    "1 - 2 - 3",
    "8 / 4 / 2",
    "-(-(x))",
    "+x",
    "x*x*x - 2*x",
    "-0.2/(1+x^2)",
    "exp(-abs(x))*cos(x)",
    "10^(-3)*x^4 - sqrt(abs(x))",
    "1/(1+exp(-x))",
};

}  // namespace

TEST_CASE("round trip on the corpus") {
  REQUIRE(kCorpus.size() >= 30);
  for (const auto& text : kCorpus) {
    CAPTURE(text);
    const auto e = parse_expression(text);
    const auto again = parse_expression(unparse(*e));
    CHECK(equal(*e, *again));
    CHECK(unparse(*again) == unparse(*e));
    const CompiledExpr prog(*e);
    for (double x : {-3.5, -1.0, 0.0, 0.25, 2.0, 7.0}) {
      const double a = evaluate(*e, x), b = prog(x);
      CHECK(((std::isnan(a) && std::isnan(b)) || a == b));
    }
  }
}

TEST_CASE("precedence and associativity") {
  auto val = [](const char* t, double x = 0.0) { return evaluate(*parse_expression(t), x); };
  CHECK(val("2^3^2") == 512.0);
  CHECK(val("-2^2") == -4.0);
  CHECK(val("2^-1") == 0.5);
  CHECK(val("1 - 2 - 3") == -4.0);
  CHECK(val("8 / 4 / 2") == 1.0);
  CHECK(val("1 + 2 * 3") == 7.0);
  CHECK(val("-1/(1+abs(x))") == -1.0);
  CHECK(val("-x", 3.0) == -3.0);
  CHECK(val("sgn(x)", 0.0) == 0.0);
  CHECK(val("sgn(x)", -2.0) == -1.0);
  CHECK(val("min(x, 1)", 4.0) == 1.0);
}

TEST_CASE("kinks are detected") {
  CHECK(has_kinks(*parse_expression("abs(x)")));
  CHECK(has_kinks(*parse_expression("1 + max(x, 0)")));
  CHECK_FALSE(has_kinks(*parse_expression("exp(-x^2)")));
  CHECK(parse_potential("-1/(1+abs(x))").has_kinks());
}

TEST_CASE("syntax errors carry positions") {
  auto position = [](const char* t) -> std::size_t {
    try {
      (void)parse_expression(t);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position("1 + * 2") == 4);
  CHECK(position("(x") == 2);
  CHECK(position("x)") == 1);
  CHECK(position("") == 0);
  CHECK(position("2 ^") == 3);
  CHECK(position("foo(x)") == 0);
  CHECK(position("1 + bar") == 4);
  CHECK(position("min(x)") == 0);
  CHECK(position("3 $ 4") == 2);
  CHECK(position("1e") == 1);
  CHECK_THROWS_WITH_AS((void)parse_expression("y + 1"), doctest::Contains("unknown identifier 'y'"), ParseError);
  CHECK_THROWS_AS((void)parse_expression("1e999"), ParseError);
}

TEST_CASE("potentials must be finite") {
  CHECK_THROWS_AS((void)parse_potential("1/x"), ConfigError);
  CHECK_THROWS_AS((void)parse_potential("1/(x-3)"), ConfigError);
  CHECK_NOTHROW((void)parse_potential("1/(1+x^2)"));
}

TEST_CASE("tail tags") {
  CHECK(std::holds_alternative<std::monostate>(parse_tail_class("")));
  CHECK(std::get<tail::ConstantLimit>(parse_tail_class("constant_limit:-1.5")).c == -1.5);
  const auto p = std::get<tail::PowerDecay>(parse_tail_class("power_decay:1:-1"));
  CHECK(p.alpha == 1.0);
  CHECK(p.coefficient == -1.0);
  CHECK(std::get<tail::TitchmarshDecline>(parse_tail_class("titchmarsh_decline")).p == 1.0);
  CHECK(std::holds_alternative<tail::MolchanovGrowth>(parse_tail_class("molchanov_growth")));
  CHECK_THROWS_AS((void)parse_tail_class("constant_limit"), ConfigError);
  CHECK_THROWS_AS((void)parse_tail_class("titchmarsh_decline:2"), ConfigError);
  CHECK_THROWS_AS((void)parse_tail_class("power_decay:0:1"), ConfigError);
  CHECK_THROWS_AS((void)parse_tail_class("periodic"), ConfigError);
  // Tag text round-trips.
  for (const char* t : {"constant_limit:1", "decaying_summable", "power_decay:1.5:-0.3", "molchanov_growth",
                        "titchmarsh_decline:0.5"})
    CHECK(to_string(parse_tail_class(to_string(parse_tail_class(t)))) == to_string(parse_tail_class(t)));
}

TEST_CASE("complex numbers and lists") {
  using C = std::complex<double>;
  CHECK(parse_complex("0+1i") == C(0, 1));
  CHECK(parse_complex("i") == C(0, 1));
  CHECK(parse_complex("-i") == C(0, -1));
  CHECK(parse_complex("1") == C(1, 0));
  CHECK(parse_complex("-2.5i") == C(0, -2.5));
  CHECK(parse_complex("1e-3-2i") == C(1e-3, -2));
  CHECK(parse_complex("-1e+2+3e-1i") == C(-100, 0.3));
  CHECK_THROWS_AS((void)parse_complex("1+2j"), ConfigError);
  CHECK_THROWS_AS((void)parse_complex(""), ConfigError);
  CHECK(parse_list("1,2, 3", 3, "rect") == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS((void)parse_list("1,2", 3, "rect"), ConfigError);
  CHECK_THROWS_AS((void)parse_list("1,a,3", 3, "rect"), ConfigError);
}
