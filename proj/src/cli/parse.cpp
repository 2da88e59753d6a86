#include "indefsl/cli/parse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include <fmt/format.h>

namespace indefsl::cli {

namespace {

struct FunctionInfo {
  std::string_view name;
  ExprOp op;
  std::size_t arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"abs", ExprOp::fn_abs, 1}, {"sgn", ExprOp::fn_sgn, 1},   {"exp", ExprOp::fn_exp, 1}, {"sin", ExprOp::fn_sin, 1},
    {"cos", ExprOp::fn_cos, 1}, {"sqrt", ExprOp::fn_sqrt, 1}, {"min", ExprOp::fn_min, 2}, {"max", ExprOp::fn_max, 2},
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    ExprPtr e = expr();
    skip();
    if (pos_ != s_.size()) fail(fmt::format("unexpected '{}'", s_[pos_]));
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(fmt::format("syntax error at position {}: {}", pos_, msg), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(pos_ < s_.size() ? fmt::format("expected '{}' but found '{}'", c, s_[pos_])
                                          : fmt::format("expected '{}' at end of input", c));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::make(ExprOp::add, {lhs, term()});
      else if (accept('-'))
        lhs = Expr::make(ExprOp::subtract, {lhs, term()});
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::make(ExprOp::multiply, {lhs, unary()});
      else if (accept('/'))
        lhs = Expr::make(ExprOp::divide, {lhs, unary()});
      else
        return lhs;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return Expr::make(ExprOp::negate, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return Expr::make(ExprOp::power, {base, unary()});
    return base;
  }

  ExprPtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "x") return Expr::make_variable();
      for (const auto& f : kFunctions) {
        if (f.name != name) continue;
        expect('(');
        std::vector<ExprPtr> args{expr()};
        while (accept(',')) args.push_back(expr());
        expect(')');
        if (args.size() != f.arity) {
          pos_ = start;
          fail(fmt::format("{} takes {} argument{}, got {}", name, f.arity, f.arity == 1 ? "" : "s", args.size()));
        }
        return Expr::make(f.op, std::move(args));
      }
      pos_ = start;
      fail(fmt::format("unknown identifier '{}'", name));
    }
    fail(fmt::format("unexpected '{}'", c));
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [this] {
      const std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - b;
    };
    std::size_t n = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = save;
        fail("malformed exponent");
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    return Expr::make_number(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

double to_double(std::string_view t, std::string_view what) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(fmt::format("invalid number '{}' in {}", t, what));
  return v;
}

std::vector<std::string_view> split(std::string_view t, char sep) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (;;) {
    const std::size_t e = t.find(sep, b);
    out.push_back(t.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
    if (e == std::string_view::npos) break;
    b = e + 1;
  }
  return out;
}

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

Potential parse_potential(std::string_view text, TailClass left, TailClass right) {
  Potential q(parse_expression(text), std::move(left), std::move(right));
  if (!std::isfinite(q(0.0))) throw ConfigError(fmt::format("potential '{}' does not evaluate at x = 0", text));
  check_finite(q);
  return q;
}

TailClass parse_tail_class(std::string_view text) {
  if (text.empty()) return {};
  const auto parts = split(text, ':');
  const std::string_view tag = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw ConfigError(fmt::format("class tag '{}' expects {} parameter{}", tag, n, n == 1 ? "" : "s"));
  };
  if (tag == "constant_limit") {
    need(1);
    return tail::ConstantLimit{to_double(parts[1], "constant_limit")};
  }
  if (tag == "decaying_summable") {
    need(0);
    return tail::DecayingSummable{};
  }
  if (tag == "power_decay") {
    need(2);
    const double alpha = to_double(parts[1], "power_decay"), coef = to_double(parts[2], "power_decay");
    if (!(alpha > 0.0)) throw ConfigError("power_decay exponent must be positive");
    return tail::PowerDecay{alpha, coef};
  }
  if (tag == "molchanov_growth") {
    need(0);
    return tail::MolchanovGrowth{};
  }
  if (tag == "titchmarsh_decline") {
    if (parts.size() == 1) return tail::TitchmarshDecline{};
    need(1);
    const double p = to_double(parts[1], "titchmarsh_decline");
    if (!(p > 0.0 && p < 1.5)) throw ConfigError("titchmarsh_decline exponent must lie in (0, 3/2)");
    return tail::TitchmarshDecline{p};
  }
  throw ConfigError(fmt::format("unknown class tag '{}'", tag));
}

std::complex<double> parse_complex(std::string_view text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw ConfigError("empty complex number");
  if (t.back() != 'i') return {to_double(t, "complex number"), 0.0};
  t.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t cut = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  const std::string re = cut == std::string::npos ? "" : t.substr(0, cut);
  std::string im = cut == std::string::npos ? t : t.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : to_double(re, "complex number"), to_double(im, "complex number")};
}

std::vector<double> parse_list(std::string_view text, std::size_t count, std::string_view what) {
  const auto parts = split(text, ',');
  if (parts.size() != count)
    throw ConfigError(fmt::format("{} expects {} comma-separated values, got {}", what, count, parts.size()));
  std::vector<double> out;
  for (auto p : parts) out.push_back(to_double(p, what));
  return out;
}

}  // namespace indefsl::cli
