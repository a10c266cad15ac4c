#include "polyincl/quadfield.hpp"

#include <sstream>
#include <stdexcept>

namespace polyincl {

namespace {

constexpr int kPrimes[3] = {2, 3, 5};

}  // namespace

QuadField::QuadField(const Rational& r) { c_[0] = r; }

QuadField QuadField::basis(unsigned mask) {
  if (mask >= 8) throw std::invalid_argument("QuadField::basis: mask out of range");
  QuadField q;
  q.c_[mask] = 1;
  return q;
}

QuadField QuadField::phi() { return (QuadField(1) + sqrt5()) * QuadField(Rational(1, 2)); }

bool QuadField::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool QuadField::is_rational() const {
  for (unsigned m = 1; m < 8; ++m)
    if (c_[m] != 0) return false;
  return true;
}

QuadField QuadField::conjugate(unsigned bit) const {
  QuadField q = *this;
  for (unsigned m = 0; m < 8; ++m)
    if (m & (1u << bit)) q.c_[m] = -q.c_[m];
  return q;
}

QuadField QuadField::inverse() const {
  if (is_zero()) throw std::domain_error("QuadField: inverse of zero");
  // Multiplying by the conjugates over each generator in turn lands in Q.
  QuadField num(1), y = *this;
  for (unsigned bit = 0; bit < 3; ++bit) {
    QuadField c = y.conjugate(bit);
    num = num * c;
    y = y * c;
  }
  if (!y.is_rational()) throw std::logic_error("QuadField: norm is not rational");
  return num * QuadField(1 / y.c_[0]);
}

QuadField QuadField::operator+(const QuadField& o) const {
  QuadField q;
  for (unsigned m = 0; m < 8; ++m) q.c_[m] = c_[m] + o.c_[m];
  return q;
}

QuadField QuadField::operator-(const QuadField& o) const {
  QuadField q;
  for (unsigned m = 0; m < 8; ++m) q.c_[m] = c_[m] - o.c_[m];
  return q;
}

QuadField QuadField::operator-() const { return QuadField() - *this; }

QuadField QuadField::operator*(const QuadField& o) const {
  QuadField q;
  for (unsigned a = 0; a < 8; ++a) {
    if (c_[a] == 0) continue;
    for (unsigned b = 0; b < 8; ++b) {
      if (o.c_[b] == 0) continue;
      // sqrt(A) sqrt(B) = (product of the shared primes) * sqrt(A xor B)
      long shared = 1;
      for (unsigned bit = 0; bit < 3; ++bit)
        if ((a & b) & (1u << bit)) shared *= kPrimes[bit];
      q.c_[a ^ b] += c_[a] * o.c_[b] * shared;
    }
  }
  return q;
}

Real QuadField::to_real(unsigned digits) const {
  PrecisionScope scope(digits);
  Real sum(0);
  for (unsigned m = 0; m < 8; ++m) {
    if (c_[m] == 0) continue;
    long radicand = 1;
    for (unsigned bit = 0; bit < 3; ++bit)
      if (m & (1u << bit)) radicand *= kPrimes[bit];
    sum += Real(c_[m]) * sqrt(Real(radicand));
  }
  return sum;
}

std::string QuadField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned m = 0; m < 8; ++m) {
    if (c_[m] == 0) continue;
    if (!first) os << " + ";
    os << "(" << c_[m] << ")";
    long radicand = 1;
    for (unsigned bit = 0; bit < 3; ++bit)
      if (m & (1u << bit)) radicand *= kPrimes[bit];
    if (radicand > 1) os << "*sqrt" << radicand;
    first = false;
  }
  return first ? "0" : os.str();
}

QuadField evaluate(const IntPoly& p, const QuadField& x) {
  QuadField acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + QuadField(Rational(p[i]));
  return acc;
}

}  // namespace polyincl
