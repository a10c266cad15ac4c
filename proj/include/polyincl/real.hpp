#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace polyincl {

/// Variable-precision binary floating point (MPFR). Binary operations take the
/// larger precision of their operands.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using Point = std::vector<Real>;

inline constexpr unsigned kDefaultDigits = 50;

/// Sets the process-wide default MPFR precision for the lifetime of the
/// object. Not thread safe: never construct one inside a parallel region.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Parses a decimal string ("-1.25e-3", "0.5801...") at the given precision.
/// Throws std::invalid_argument on malformed input.
Real parse_real(std::string_view text, unsigned digits);

/// Copy of x rounded to `digits` decimal digits of precision.
Real at_precision(const Real& x, unsigned digits);

/// Scientific-free decimal rendering with `digits` significant digits.
std::string to_decimal(const Real& x, unsigned digits);

/// Rounds x to `sig` significant digits, ties to even, rendered in fixed
/// notation ("1.4142136", "0.29590654").
std::string round_significant(const Real& x, unsigned sig);

Real golden_ratio(unsigned digits);
Real pi(unsigned digits);

/// Exact rational value of a decimal string (no rounding).
Rational decimal_to_rational(std::string_view text);

/// Rational nearest to x after truncating its decimal expansion to `digits`
/// places after the point.
Rational truncate_to_rational(const Real& x, unsigned digits);

std::string rational_to_string(const Rational& q);

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real dot(const Point& a, const Point& b);
Real norm(const Point& a);
Point operator-(const Point& a, const Point& b);
Point operator+(const Point& a, const Point& b);
Point operator*(const Real& s, const Point& a);

}  // namespace polyincl
