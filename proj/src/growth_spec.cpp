#include "scalebench/growth_spec.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "scalebench/error.hpp"

namespace scalebench::growth {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  GrowthFunction parse_all() {
    GrowthFunction f = spec();
    skip_ws();
    if (pos_ != s_.size()) fail("end of input");
    return f;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(std::string(s_), pos_, expected);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    const std::size_t start = pos_;
    // Named constant "e" (not followed by further letters).
    if (pos_ < s_.size() && s_[pos_] == 'e' &&
        (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return std::numbers::e;
    }
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    if (first < last && *first == '+') ++first;
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || !std::isfinite(v)) {
      pos_ = start;
      fail("number");
    }
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return v;
  }

  long integer() {
    skip_ws();
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    long v = 0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc()) fail("integer");
    pos_ = static_cast<std::size_t>(res.ptr - s_.data());
    return v;
  }

  // Wraps constructor errors so they carry the position of the offending spec.
  template <class Fn>
  GrowthFunction build(std::size_t at, Fn&& fn) {
    try {
      return fn();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string(s_), at, std::string("valid arguments (") + e.what() + ")");
    }
  }

  GrowthFunction spec() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string name = ident();
    if (name == "pow" || name == "exp" || name == "expsq") {
      expect(':');
      const double x = number();
      return build(at, [&] {
        if (name == "pow") return GrowthFunction::power(x);
        if (name == "exp") return GrowthFunction::exponential(x);
        return GrowthFunction::exp_square(x);
      });
    }
    if (name == "table") return table(at);
    if (name == "shift") {
      expect('(');
      GrowthFunction f = spec();
      expect(')');
      return shift(f);
    }
    if (name == "ptw" || name == "kang") {
      expect('(');
      GrowthFunction f = spec();
      expect(',');
      GrowthFunction g = spec();
      expect(')');
      return name == "ptw" ? pointwise_product(f, g) : kang_product(f, g);
    }
    if (name == "offset" || name == "lift") {
      expect('(');
      GrowthFunction f = spec();
      expect(',');
      const double x = number();
      expect(')');
      return build(at, [&] { return name == "offset" ? offset(f, x) : lift(f, x); });
    }
    if (name == "sub" || name == "rem") {
      expect('(');
      GrowthFunction f = spec();
      expect(',');
      const long k = integer();
      expect(')');
      return build(at, [&] { return name == "sub" ? subsample(f, k) : remainder(f, k); });
    }
    pos_ = at;
    fail("generator (pow, exp, expsq, table, shift, ptw, kang, offset, lift, sub, rem)");
  }

  GrowthFunction table(std::size_t at) {
    expect(':');
    expect('[');
    std::vector<double> prefix;
    prefix.push_back(number());
    while (peek(',')) {
      ++pos_;
      prefix.push_back(number());
    }
    expect(']');
    TableRule rule;
    if (peek('+')) {
      ++pos_;
      skip_ws();
      const std::size_t rule_at = pos_;
      if (ident() != "last") {
        pos_ = rule_at;
        fail("rule 'last+<step>' or 'last*<factor>'");
      }
      skip_ws();
      if (peek('+')) {
        ++pos_;
        rule = {TableRule::Type::Add, number()};
      } else if (peek('*')) {
        ++pos_;
        rule = {TableRule::Type::Mul, number()};
      } else {
        fail("'+' or '*'");
      }
    }
    return build(at, [&] { return GrowthFunction::table(prefix, rule); });
  }
};

}  // namespace

GrowthFunction parse_spec(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace scalebench::growth
