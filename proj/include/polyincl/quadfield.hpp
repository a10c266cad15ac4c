#pragma once

#include <array>
#include <string>

#include "polyincl/poly.hpp"
#include "polyincl/real.hpp"

namespace polyincl {

/// Exact arithmetic in Q(sqrt2, sqrt3, sqrt5). An element is a rational
/// combination of the eight products of distinct square roots; bit 0 of the
/// index stands for sqrt2, bit 1 for sqrt3, bit 2 for sqrt5.
class QuadField {
 public:
  QuadField() = default;
  QuadField(const Rational& r);  // NOLINT: implicit rational embedding
  QuadField(long n) : QuadField(Rational(n)) {}  // NOLINT

  static QuadField basis(unsigned mask);
  static QuadField sqrt2() { return basis(1); }
  static QuadField sqrt3() { return basis(2); }
  static QuadField sqrt5() { return basis(4); }
  static QuadField sqrt6() { return basis(3); }
  static QuadField sqrt10() { return basis(5); }
  static QuadField phi();

  const Rational& coefficient(unsigned mask) const { return c_[mask]; }
  bool is_zero() const;
  bool is_rational() const;

  /// Negates every component containing the given root (bit 0, 1 or 2).
  QuadField conjugate(unsigned bit) const;
  /// Throws std::domain_error for zero.
  QuadField inverse() const;

  QuadField operator+(const QuadField& o) const;
  QuadField operator-(const QuadField& o) const;
  QuadField operator-() const;
  QuadField operator*(const QuadField& o) const;
  QuadField operator/(const QuadField& o) const { return *this * o.inverse(); }
  bool operator==(const QuadField& o) const { return c_ == o.c_; }

  Real to_real(unsigned digits) const;
  std::string to_string() const;

 private:
  std::array<Rational, 8> c_{};
};

QuadField evaluate(const IntPoly& p, const QuadField& x);

}  // namespace polyincl
