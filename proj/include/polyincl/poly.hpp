#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyincl/real.hpp"

namespace polyincl {

/// Integer polynomial, coefficients from the constant term upwards, no
/// trailing zeros (the zero polynomial is empty).
using IntPoly = std::vector<Integer>;

IntPoly trimmed(IntPoly p);
int degree(const IntPoly& p);  // -1 for the zero polynomial
IntPoly derivative(const IntPoly& p);
Integer content(const IntPoly& p);
/// Content 1 and positive leading coefficient.
IntPoly primitive_part(const IntPoly& p);
IntPoly multiply(const IntPoly& a, const IntPoly& b);
/// Quotient a / b when b divides a exactly over the integers.
std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b);
/// Primitive gcd over Q (content 1, positive leading coefficient).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
/// p / gcd(p, p'), primitive.
IntPoly squarefree_part(const IntPoly& p);
bool is_squarefree(const IntPoly& p);
/// Removes the factor x^k.
IntPoly strip_x_power(const IntPoly& p);
/// x^deg p(1/x).
IntPoly reversed(const IntPoly& p);
/// p(x^2).
IntPoly compose_square(const IntPoly& p);
/// True when only even powers occur.
bool is_even(const IntPoly& p);
/// q with q(x^2) = p; requires is_even(p).
IntPoly halve_even(const IntPoly& p);

Real evaluate(const IntPoly& p, const Real& x);
/// Sign of p(x) for rational x, exactly.
int sign_at(const IntPoly& p, const Rational& x);

/// "5041x^32 - 1318386x^30 + ... + 160801".
std::string to_string(const IntPoly& p, const std::string& var = "x");

/// Number of distinct real roots in (lo, hi]. Throws std::invalid_argument for
/// a non-squarefree polynomial or lo >= hi.
int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi);

/// Disjoint rational intervals (lo, hi], each holding exactly one real root,
/// in increasing order. Requires a squarefree polynomial.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPoly& p);

/// The root in (lo, hi] to `digits` digits by bisection and Newton.
Real refine_root(const IntPoly& p, const Rational& lo, const Rational& hi, unsigned digits);

}  // namespace polyincl
