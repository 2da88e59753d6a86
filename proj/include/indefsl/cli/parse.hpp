#pragma once

// Text front-end: potential expressions, tail tags and complex numbers.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 'x' | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: abs sgn exp sin cos sqrt (one argument), min max (two).

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include "indefsl/error.hpp"
#include "indefsl/expr.hpp"
#include "indefsl/potential.hpp"

namespace indefsl::cli {

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, std::size_t position) : ConfigError(what), position_(position) {}
  [[nodiscard]] std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[nodiscard]] ExprPtr parse_expression(std::string_view text);

/// Parses, attaches tags and checks that q is finite on a sample grid.
[[nodiscard]] Potential parse_potential(std::string_view text, TailClass left = {}, TailClass right = {});

/// "constant_limit:1", "decaying_summable", "power_decay:1:-1", "molchanov_growth",
/// "titchmarsh_decline:1", or "" for none.
[[nodiscard]] TailClass parse_tail_class(std::string_view text);

/// "1", "-2.5i", "0+1i", "1e-3-2i", "i".
[[nodiscard]] std::complex<double> parse_complex(std::string_view text);

/// Comma-separated list of doubles with an exact expected count.
[[nodiscard]] std::vector<double> parse_list(std::string_view text, std::size_t count, std::string_view what);

}  // namespace indefsl::cli
