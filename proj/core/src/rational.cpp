#include "rmcalc/rational.hpp"

#include <cctype>

#include "rmcalc/errors.hpp"

namespace rmcalc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

Integer pow10(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto fail = [&]() -> Rational { throw InvalidArgument("not a rational literal: '" + std::string(text) + "'"); };

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    Integer d{std::string(den), 10};
    if (d == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    result = Rational(Integer(std::string(num), 10), d);
    result.canonicalize();
  } else {
    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view ex = s.substr(e + 1);
      bool eneg = false;
      if (!ex.empty() && (ex.front() == '-' || ex.front() == '+')) {
        eneg = ex.front() == '-';
        ex.remove_prefix(1);
      }
      if (!all_digits(ex) || ex.size() > 6) return fail();
      exponent = std::stol(std::string(ex));
      if (eneg) exponent = -exponent;
    }
    std::string_view ip = mantissa, fp;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      ip = mantissa.substr(0, dot);
      fp = mantissa.substr(dot + 1);
    }
    if (ip.empty() && fp.empty()) return fail();
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) return fail();
    Integer digits(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
    exponent -= static_cast<long>(fp.size());
    if (exponent >= 0) {
      result = Rational(digits * pow10(static_cast<unsigned>(exponent)));
    } else {
      result = Rational(digits, pow10(static_cast<unsigned>(-exponent)));
      result.canonicalize();
    }
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (sgn(a) == 0) return abs(b);
  if (sgn(b) == 0) return abs(a);
  Integer n, d;
  mpz_gcd(n.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), a.get_den_mpz_t(), b.get_den_mpz_t());
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

}  // namespace rmcalc
