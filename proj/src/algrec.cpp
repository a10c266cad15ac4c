#include "polyincl/algrec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "polyincl/lll.hpp"

namespace polyincl {

unsigned fractional_digits(const std::string& x) {
  auto dot = x.find('.');
  if (dot == std::string::npos) return 0;
  unsigned n = 0;
  for (std::size_t i = dot + 1; i < x.size() && std::isdigit(static_cast<unsigned char>(x[i])); ++i) ++n;
  return n;
}

bool precision_sufficient(unsigned digits, int max_degree, unsigned height_digits) {
  return digits >= static_cast<unsigned>(max_degree) * height_digits + 50;
}

namespace {

Real pow10(long e) { return pow(Real(10), e); }

// |p(x)| / |c|_2 at the current precision.
Real normalized_residual(const IntPoly& p, const Real& x) {
  Real n(0);
  for (const auto& c : p) n += Real(c) * Real(c);
  return abs(evaluate(p, x)) / sqrt(n);
}

bool height_ok(const IntPoly& p, unsigned height_digits) {
  const Integer bound = boost::multiprecision::pow(Integer(10), height_digits);
  for (const auto& c : p)
    if (abs(c) > bound) return false;
  return true;
}

struct Complex {
  Real re, im;
  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Complex operator/(const Complex& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Real abs2() const { return re * re + im * im; }
};

// All complex roots of a squarefree polynomial (Weierstrass / Durand-Kerner).
std::vector<Complex> complex_roots(const IntPoly& p, unsigned digits) {
  PrecisionScope scope(digits);
  const int d = degree(p);
  std::vector<Complex> z(static_cast<std::size_t>(d));
  Real bound(1);
  for (int i = 0; i < d; ++i) bound = max(bound, abs(Real(p[static_cast<std::size_t>(i)]) / Real(p.back())));
  bound += 1;
  Complex seed{Real("0.4"), Real("0.9")}, acc{Real(1), Real(0)};
  for (int i = 0; i < d; ++i) {
    acc = acc * seed;
    z[static_cast<std::size_t>(i)] = {acc.re * bound, acc.im * bound};
  }
  auto eval = [&](const Complex& x) {
    Complex r{Real(0), Real(0)};
    for (std::size_t i = p.size(); i-- > 0;) r = r * x + Complex{Real(p[i]), Real(0)};
    return r;
  };
  const Real tol = pow10(-static_cast<long>(digits) + 5);
  for (int it = 0; it < 2000; ++it) {
    Real change(0);
    for (int i = 0; i < d; ++i) {
      Complex den{Real(p.back()), Real(0)};
      for (int j = 0; j < d; ++j)
        if (j != i) den = den * (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
      Complex step = eval(z[static_cast<std::size_t>(i)]) / den;
      z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] - step;
      change = max(change, step.abs2());
    }
    if (change < tol * tol) break;
  }
  return z;
}

}  // namespace

std::optional<IntPoly> find_vanishing_factor(const IntPoly& p0, const Real& x, bool& searched) {
  IntPoly p = primitive_part(p0);
  const int d = degree(p);
  searched = d <= 8;
  if (!searched || d <= 1) return std::nullopt;
  const unsigned digits = 80;
  PrecisionScope scope(digits);
  auto roots = complex_roots(p, digits);
  // The root closest to x is the one whose minimal polynomial we want.
  std::size_t self = 0;
  Real best = -1;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Real dist = (roots[i] - Complex{x, Real(0)}).abs2();
    if (best < 0 || dist < best) best = dist, self = i;
  }
  const Real tol("1e-30");
  std::optional<IntPoly> smallest;
  // By Gauss's lemma lc(p) * prod_{S} (X - alpha) is integral for the root
  // set S of any factor over Z.
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (!(mask & (1u << self))) continue;
    const int size = __builtin_popcount(mask);
    if (size >= d) continue;
    std::vector<Complex> c{{Real(p.back()), Real(0)}};
    for (int i = 0; i < d; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<Complex> next(c.size() + 1, Complex{Real(0), Real(0)});
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] = next[k + 1] + c[k];
        next[k] = next[k] - c[k] * roots[static_cast<std::size_t>(i)];
      }
      c = std::move(next);
    }
    IntPoly f;
    bool integral = true;
    for (const auto& v : c) {
      Real r = round(v.re);
      if (abs(v.im) > tol || abs(v.re - r) > tol) {
        integral = false;
        break;
      }
      f.push_back(r.convert_to<Integer>());
    }
    if (!integral) continue;
    f = primitive_part(f);
    if (degree(f) < 1 || !exact_divide(p, f)) continue;
    if (!smallest || degree(f) < degree(*smallest)) smallest = f;
  }
  return smallest;
}

std::optional<AlgebraicNumber> min_poly_guess(const std::string& xs, int max_degree, unsigned height_digits,
                                              const GuessOptions& opts) {
  if (max_degree < 1) throw std::invalid_argument("min_poly_guess: max_degree must be positive");
  const unsigned digits = fractional_digits(xs);
  if (digits <= opts.guard_digits + 10) throw std::invalid_argument("min_poly_guess: too few digits in the input");
  const unsigned work = digits + opts.margin_digits;
  PrecisionScope scope(work);
  const Real x = parse_real(xs, work);
  const Real scale = pow10(static_cast<long>(digits - opts.guard_digits));

  const auto n = static_cast<std::size_t>(max_degree + 1);
  IntMatrix basis(n, std::vector<Integer>(n + 1, Integer(0)));
  Real xp(1);
  for (std::size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = Real(round(scale * xp)).convert_to<Integer>();
    xp *= x;
  }
  lll_reduce(basis);

  const Real accept = pow10(-static_cast<long>(digits / 2));
  IntPoly combined;
  for (const auto& row : basis) {
    IntPoly cand = trimmed(IntPoly(row.begin(), row.begin() + static_cast<long>(n)));
    if (degree(cand) < 1 || !height_ok(cand, height_digits)) continue;
    if (normalized_residual(cand, x) >= accept) continue;
    combined = combined.empty() ? primitive_part(cand) : gcd(combined, cand);
  }
  if (degree(combined) < 1) return std::nullopt;
  IntPoly poly = squarefree_part(combined);
  if (x != 0) poly = primitive_part(strip_x_power(poly));
  if (degree(poly) < 1 || normalized_residual(poly, x) >= accept) return std::nullopt;

  AlgebraicNumber a;
  bool searched = false;
  while (auto f = find_vanishing_factor(poly, x, searched)) {
    if (normalized_residual(*f, x) >= accept) break;
    poly = *f;
  }
  a.poly = poly;
  a.minimal_certified = searched;
  a.approx = xs;
  a.digits_used = digits;
  const Rational t = truncate_to_rational(x, digits / 2);
  const Rational w = Rational(1, boost::multiprecision::pow(Integer(10), digits / 2));
  a.lo = t - w;
  a.hi = t + w;
  return a;
}

std::string VerificationReport::failed_check() const {
  for (const auto& c : checks)
    if (!c.passed) return c.name;
  return {};
}

VerificationReport verify_algebraic(const AlgebraicNumber& a, unsigned recheck_digits, const RecheckFn& recheck,
                                    const std::optional<QuadField>& closed_form) {
  VerificationReport rep;
  auto add = [&](std::string name, bool ok, std::string detail) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
    rep.passed = rep.passed && ok;
  };
  const IntPoly& p = a.poly;
  const bool formed = degree(p) >= 1 && content(p) == 1 && p.back() > 0 && is_squarefree(p) && a.lo < a.hi;
  add("well_formed", formed, formed ? "content 1, positive leading coefficient, squarefree" : "malformed polynomial");
  if (!formed) return rep;

  const int roots = sturm_count(p, a.lo, a.hi);
  add("sturm", roots == 1, "real roots in interval: " + std::to_string(roots));

  // |p(x~) - p(x)| <= |x~ - x| * max|p'| on the interval; bound it crudely by
  // d * H * max(1, |x|)^d with five orders of slack.
  const unsigned digits = a.digits_used;
  auto residual_bound = [&](unsigned dg, const Real& x) {
    Real h(0);
    for (const auto& c : p) h = max(h, abs(Real(c)));
    Real growth = pow(max(Real(1), abs(x) + 1), degree(p));
    return pow10(-static_cast<long>(dg) + 5) * degree(p) * h * growth;
  };
  {
    PrecisionScope scope(digits + 20);
    const Real x = parse_real(a.approx, digits + 20);
    const Real res = abs(evaluate(p, x));
    const Real bound = residual_bound(digits, x);
    add("residual", res <= bound, "|p(x)| = " + to_decimal(res, 3) + ", bound " + to_decimal(bound, 3));
    const bool inside = Real(a.lo) < x && x <= Real(a.hi);
    add("interval_contains_approx", inside, inside ? "approximation inside the isolating interval" : "outside");

    if (recheck) {
      PrecisionScope wide(recheck_digits + 20);
      const std::string more = recheck(recheck_digits);
      const Real x2 = parse_real(more, recheck_digits + 20);
      const Real res2 = abs(evaluate(p, x2));
      const Real bound2 = residual_bound(recheck_digits, x2);
      const bool shrinks = res2 <= bound2 && (res == 0 || res2 <= res) && Real(a.lo) < x2 && x2 <= Real(a.hi);
      add("recheck", shrinks, "|p(x)| at " + std::to_string(recheck_digits) + " digits = " + to_decimal(res2, 3));
    }
  }
  if (closed_form) {
    const bool zero = evaluate(p, *closed_form).is_zero();
    PrecisionScope scope(digits + 20);
    const Real v = closed_form->to_real(digits + 20);
    const bool inside = Real(a.lo) < v && v <= Real(a.hi);
    add("closed_form", zero && inside,
        std::string(zero ? "p(closed form) = 0 exactly" : "p(closed form) != 0") +
            (inside ? "" : "; closed form outside interval"));
  }
  return rep;
}

nlohmann::json algebraic_to_json(const AlgebraicNumber& a) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : a.poly) coeffs.push_back(c.str());
  return {{"coeffs", coeffs},
          {"interval", {rational_to_string(a.lo), rational_to_string(a.hi)}},
          {"approx", a.approx},
          {"digits_used", a.digits_used},
          {"minimality", a.minimality()}};
}

namespace {

// "p" or "p/q" in decimal; rejects anything else.
Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  const Rational num = decimal_to_rational(s.substr(0, slash));
  if (slash == std::string::npos) return num;
  return num / decimal_to_rational(s.substr(slash + 1));
}

Integer parse_integer(const std::string& s) {
  const Rational r = decimal_to_rational(s);
  if (boost::multiprecision::denominator(r) != 1) throw std::invalid_argument("not an integer: " + s);
  return boost::multiprecision::numerator(r);
}

}  // namespace

AlgebraicNumber algebraic_from_json(const nlohmann::json& j) {
  try {
    AlgebraicNumber a;
    for (const auto& c : j.at("coeffs")) a.poly.push_back(parse_integer(c.get<std::string>()));
    a.poly = trimmed(a.poly);
    a.lo = parse_rational(j.at("interval").at(0).get<std::string>());
    a.hi = parse_rational(j.at("interval").at(1).get<std::string>());
    a.approx = j.at("approx").get<std::string>();
    a.digits_used = j.at("digits_used").get<unsigned>();
    a.minimal_certified = j.at("minimality").get<std::string>() == "certified";
    return a;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("algebraic_from_json: ") + e.what());
  }
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"passed", r.passed}, {"checks", checks}};
}

// ---------------------------------------------------------------------------

const std::vector<ClosedForm>& closed_forms() {
  static const std::vector<ClosedForm> forms = [] {
    const QuadField s2 = QuadField::sqrt2(), s3 = QuadField::sqrt3(), s5 = QuadField::sqrt5();
    const QuadField s6 = QuadField::sqrt6(), s10 = QuadField::sqrt10(), phi = QuadField::phi();
    const QuadField half(Rational(1, 2));
    const QuadField bracket = QuadField(1) - half * s10 + half * s2 + s5;  // 1 - sqrt10/2 + sqrt2/2 + sqrt5
    return std::vector<ClosedForm>{
        {'C', 'T', "1/(1 + (2/3)sqrt3 + (1/2)sqrt6)", (QuadField(1) + QuadField(Rational(2, 3)) * s3 + half * s6).inverse()},
        {'O', 'T', "1/2", half},
        {'I', 'T', "1/(phi^2 sqrt2)", (phi * phi * s2).inverse()},
        {'T', 'C', "sqrt2", s2},
        {'O', 'C', "(3/4)sqrt2", QuadField(Rational(3, 4)) * s2},
        {'D', 'C', "(1/(sqrt2 phi^3))(1 - sqrt10/2 + sqrt2/2 + sqrt5)", (s2 * phi * phi * phi).inverse() * bracket},
        {'I', 'C', "1/phi", phi.inverse()},
        {'T', 'O', "1", QuadField(1)},
        {'C', 'O', "2 - sqrt2", QuadField(2) - s2},
        {'D', 'O', "(25sqrt2 - 9sqrt10)/22", (QuadField(25) * s2 - QuadField(9) * s10) * QuadField(Rational(1, 22))},
        {'I', 'O', "sqrt2/phi^2", s2 * (phi * phi).inverse()},
        {'T', 'D', "phi sqrt2", phi * s2},
        {'C', 'D', "phi", phi},
        {'O', 'D', "phi^2/sqrt2", phi * phi * s2.inverse()},
        {'I', 'D', "1/(2phi) + 1", (QuadField(2) * phi).inverse() + QuadField(1)},
        {'C', 'I', "(5 + 7sqrt5)/22", (QuadField(5) + QuadField(7) * s5) * QuadField(Rational(1, 22))},
        {'O', 'I', "(1/2)(1 - sqrt10/2 + sqrt2/2 + sqrt5)", half * bracket},
        {'D', 'I', "(15 - sqrt5)/22", (QuadField(15) - s5) * QuadField(Rational(1, 22))},
    };
  }();
  return forms;
}

std::optional<ClosedForm> closed_form_for(char p, char q) {
  for (const auto& f : closed_forms())
    if (f.p == p && f.q == q) return f;
  return std::nullopt;
}

std::vector<ReciprocityCheck> reciprocity_checks() {
  const QuadField s2 = QuadField::sqrt2(), s5 = QuadField::sqrt5(), s10 = QuadField::sqrt10();
  const QuadField phi = QuadField::phi();
  const QuadField phi3 = phi * phi * phi;
  std::vector<ReciprocityCheck> out;
  // D in O times phi^3/sqrt2 is C in I.
  const QuadField d_in_o = (QuadField(25) * s2 - QuadField(9) * s10) * QuadField(Rational(1, 22));
  const QuadField c_in_i = (QuadField(5) + QuadField(7) * s5) * QuadField(Rational(1, 22));
  out.push_back({"(25sqrt2 - 9sqrt10)/22 * phi^3/sqrt2 = (5 + 7sqrt5)/22", d_in_o * phi3 * s2.inverse() == c_in_i});
  // Concentric reciprocals with respect to the unit sphere: the reciprocal
  // of a body with unit edge and inradius r has circumradius 1/r, so its edge
  // is 1/(r R1) with R1 the circumradius of that body at unit edge. Squared
  // radii stay inside the field.
  const QuadField r_cube_sq(Rational(1, 4)), big_r_oct_sq(Rational(1, 2));
  out.push_back({"cube/octahedron reciprocal edge product = 2sqrt2 (squared: 8)",
                 (r_cube_sq * big_r_oct_sq).inverse() == QuadField(8)});
  const QuadField r_dod_sq = (QuadField(25) + QuadField(11) * s5) * QuadField(Rational(1, 40));
  const QuadField big_r_ico_sq = (QuadField(5) + s5) * QuadField(Rational(1, 8));
  out.push_back({"icosahedron/dodecahedron reciprocal edge product = 4/phi^3 (squared: 16/phi^6)",
                 (r_dod_sq * big_r_ico_sq).inverse() == QuadField(16) * (phi3 * phi3).inverse()});
  out.push_back({"quotient of the two products: 2sqrt2 / (4/phi^3) = phi^3/sqrt2",
                 QuadField(2) * s2 * (QuadField(4) * phi3.inverse()).inverse() == phi3 * s2.inverse()});
  out.push_back({"(2 - phi) phi^2 = 1", (QuadField(2) - phi) * phi * phi == QuadField(1)});
  return out;
}

}  // namespace polyincl
