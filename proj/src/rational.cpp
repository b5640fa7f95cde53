#include "kmz/rational.hpp"

#include <algorithm>
#include <cctype>

#include "kmz/error.hpp"

namespace kmz {

namespace {

bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  if (!std::all_of(s.begin() + start, s.end(), [](unsigned char c) { return std::isdigit(c); }))
    return false;
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto bad = [&](const char* why) {
    return Error(Errc::ParseError, "malformed rational '" + std::string(text) + "': " + why);
  };
  auto slash = text.find('/');
  Integer num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw bad("expected integer");
  } else {
    std::string_view d = text.substr(slash + 1);
    if (!parse_integer(text.substr(0, slash), num)) throw bad("bad numerator");
    if (d.empty() || d[0] == '-' || d[0] == '+' || !parse_integer(d, den)) throw bad("bad denominator");
    if (den == 0) throw bad("zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

bool is_integral(const Rational& q) { return q.get_den() == 1; }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return r;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Rational fraction(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace kmz
