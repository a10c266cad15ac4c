#include "polyincl/real.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace polyincl {

namespace {
// MPFR's own default (20 digits) is too coarse for the geometry tolerances.
[[maybe_unused]] const bool kDefaultPrecisionSet = (Real::default_precision(kDefaultDigits), true);
}  // namespace

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

namespace {

bool valid_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  bool digits = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, digits = true;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, digits = true;
  }
  if (!digits) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    bool exp_digits = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, exp_digits = true;
    if (!exp_digits) return false;
  }
  return i == s.size();
}

}  // namespace

Real parse_real(std::string_view text, unsigned digits) {
  if (!valid_decimal(text)) throw std::invalid_argument("malformed decimal: " + std::string(text));
  Real x;
  x.precision(digits);
  x = Real(std::string(text), digits);
  return x;
}

Real at_precision(const Real& x, unsigned digits) {
  Real y(x, digits);
  return y;
}

std::string to_decimal(const Real& x, unsigned digits) {
  if (x == 0) return "0";
  Real ax = abs(x);
  if (ax >= Real(1e-5) && ax < Real(1e6)) {
    // fixed notation with `digits` significant digits
    // Exponent after rounding to `digits` significant digits, so that a carry
    // (0.999... -> 1.000...) does not add a digit.
    const std::string sci = ax.str(static_cast<std::streamsize>(digits > 0 ? digits - 1 : 0), std::ios_base::scientific);
    long exp10 = std::stol(sci.substr(sci.find('e') + 1));
    long after = static_cast<long>(digits) - 1 - exp10;
    if (after < 0) after = 0;
    std::string s = x.str(static_cast<std::streamsize>(after), std::ios_base::fixed);
    return s;
  }
  return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

std::string round_significant(const Real& x, unsigned sig) {
  if (x == 0) return "0";
  // Render with plenty of guard digits, then round the digit string by hand so
  // that ties go to even.
  std::string s = abs(x).str(static_cast<std::streamsize>(sig + 25), std::ios_base::scientific);
  auto epos = s.find('e');
  long exp10 = std::stol(s.substr(epos + 1));
  std::string mant;
  for (char c : s.substr(0, epos))
    if (std::isdigit(static_cast<unsigned char>(c))) mant.push_back(c);
  std::string kept = mant.substr(0, sig);
  std::string rest = mant.substr(sig);
  bool round_up = false;
  if (!rest.empty()) {
    if (rest[0] > '5') {
      round_up = true;
    } else if (rest[0] == '5') {
      bool beyond = std::any_of(rest.begin() + 1, rest.end(), [](char c) { return c != '0'; });
      round_up = beyond || ((kept.back() - '0') % 2 == 1);
    }
  }
  if (round_up) {
    int i = static_cast<int>(kept.size()) - 1;
    while (i >= 0 && kept[i] == '9') kept[i--] = '0';
    if (i < 0) {
      kept.insert(kept.begin(), '1');
      kept.pop_back();
      ++exp10;
    } else {
      ++kept[i];
    }
  }
  std::string out;
  if (x < 0) out.push_back('-');
  if (exp10 >= 0) {
    auto int_len = static_cast<std::size_t>(exp10 + 1);
    if (int_len >= kept.size()) {
      out += kept + std::string(int_len - kept.size(), '0');
    } else {
      out += kept.substr(0, int_len) + "." + kept.substr(int_len);
    }
  } else {
    out += "0." + std::string(static_cast<std::size_t>(-exp10 - 1), '0') + kept;
  }
  return out;
}

Real golden_ratio(unsigned digits) {
  Real five(5, digits);
  return (Real(1, digits) + sqrt(five)) / 2;
}

Real pi(unsigned digits) {
  Real x(0, digits);
  mpfr_const_pi(x.backend().data(), MPFR_RNDN);
  return x;
}

Rational decimal_to_rational(std::string_view text) {
  if (!valid_decimal(text)) throw std::invalid_argument("malformed decimal: " + std::string(text));
  std::string s(text);
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool after_point = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      after_point = true;
      continue;
    }
    digits.push_back(s[i]);
    if (after_point) ++scale;
  }
  if (i < s.size()) scale -= std::stol(s.substr(i + 1));
  // A leading zero would select octal parsing.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Integer num(digits);
  if (neg) num = -num;
  Integer ten_pow = pow(Integer(10), static_cast<unsigned>(std::abs(scale)));
  return scale >= 0 ? Rational(num, ten_pow) : Rational(num * ten_pow);
}

Rational truncate_to_rational(const Real& x, unsigned digits) {
  Real scaled = x * pow(Real(10, x.precision()), digits);
  Integer z;
  mpfr_get_z(z.backend().data(), scaled.backend().data(), MPFR_RNDZ);
  return Rational(z, pow(Integer(10), digits));
}

std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

Real dot(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Real norm(const Point& a) { return sqrt(dot(a, a)); }

Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator*(const Real& s, const Point& a) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

}  // namespace polyincl
