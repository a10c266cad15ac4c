#include "polyincl/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polyincl {

IntPoly trimmed(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const IntPoly& p) { return static_cast<int>(trimmed(p).size()) - 1; }

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return trimmed(d);
}

Integer content(const IntPoly& p) {
  Integer g = 0;
  for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  IntPoly q = trimmed(p);
  if (q.empty()) return q;
  Integer g = content(q);
  if (q.back() < 0) g = -g;
  for (auto& c : q) c /= g;
  return q;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trimmed(r);
}

std::optional<IntPoly> exact_divide(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = trimmed(a0), b = trimmed(b0);
  if (b.empty()) throw std::invalid_argument("exact_divide: division by zero polynomial");
  if (a.empty()) return IntPoly{};
  if (a.size() < b.size()) return std::nullopt;
  IntPoly q(a.size() - b.size() + 1, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = a[k + b.size() - 1];
    if (top % b.back() != 0) return std::nullopt;
    q[k] = top / b.back();
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= q[k] * b[j];
  }
  for (const auto& c : a)
    if (c != 0) return std::nullopt;
  return trimmed(q);
}

namespace {

// Pseudo-remainder of a by b scaled by |lc(b)|^(deg a - deg b + 1), so the
// sign of the remainder is that of the true remainder.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const Integer lc = abs(b.back());
  const Integer& lb = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const Integer top = a.back();
    for (auto& c : a) c *= lc;
    // a -= (top * lc / lb) x^shift b, with lc / lb = sign(lb)
    const Integer f = lb < 0 ? Integer(-top) : top;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a = trimmed(a);
  }
  return a;
}

IntPoly primitive_keep_sign(const IntPoly& p) {
  IntPoly q = trimmed(p);
  if (q.empty()) return q;
  Integer g = content(q);
  for (auto& c : q) c /= g;
  return q;
}

}  // namespace

IntPoly gcd(const IntPoly& a0, const IntPoly& b0) {
  IntPoly a = primitive_part(a0), b = primitive_part(b0);
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = primitive_part(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return primitive_part(a);
}

IntPoly squarefree_part(const IntPoly& p) {
  IntPoly q = primitive_part(p);
  if (q.size() <= 2) return q;
  IntPoly g = gcd(q, derivative(q));
  if (g.size() <= 1) return q;
  return primitive_part(*exact_divide(q, g));
}

bool is_squarefree(const IntPoly& p) {
  IntPoly q = trimmed(p);
  if (q.size() <= 2) return !q.empty();
  return gcd(q, derivative(q)).size() == 1;
}

IntPoly strip_x_power(const IntPoly& p) {
  IntPoly q = trimmed(p);
  std::size_t k = 0;
  while (k < q.size() && q[k] == 0) ++k;
  return IntPoly(q.begin() + static_cast<long>(k), q.end());
}

IntPoly reversed(const IntPoly& p) {
  IntPoly q = trimmed(p);
  std::reverse(q.begin(), q.end());
  return trimmed(q);
}

IntPoly compose_square(const IntPoly& p) {
  IntPoly q = trimmed(p);
  if (q.empty()) return q;
  IntPoly r(2 * q.size() - 1, Integer(0));
  for (std::size_t i = 0; i < q.size(); ++i) r[2 * i] = q[i];
  return r;
}

bool is_even(const IntPoly& p) {
  for (std::size_t i = 1; i < p.size(); i += 2)
    if (p[i] != 0) return false;
  return true;
}

IntPoly halve_even(const IntPoly& p) {
  if (!is_even(p)) throw std::invalid_argument("halve_even: odd powers present");
  IntPoly r;
  for (std::size_t i = 0; i < p.size(); i += 2) r.push_back(p[i]);
  return trimmed(r);
}

Real evaluate(const IntPoly& p, const Real& x) {
  Real acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + Real(p[i]);
  return acc;
}

int sign_at(const IntPoly& p, const Rational& x) {
  // den^n p(num/den) = sum c_i num^i den^(n-i) has the sign of p(x), den > 0.
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  std::vector<Integer> dens(p.size(), Integer(1));
  for (std::size_t i = 1; i < p.size(); ++i) dens[i] = dens[i - 1] * den;
  Integer h = 0;
  for (std::size_t i = p.size(); i-- > 0;) h = h * num + p[i] * dens[p.size() - 1 - i];
  return h > 0 ? 1 : (h < 0 ? -1 : 0);
}

std::string to_string(const IntPoly& p0, const std::string& var) {
  IntPoly p = trimmed(p0);
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    Integer c = p[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

namespace {

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain{primitive_keep_sign(p), primitive_keep_sign(derivative(p))};
  while (chain.back().size() > 1) {
    IntPoly r = pseudo_remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(primitive_keep_sign(r));
  }
  return chain;
}

int variations(const std::vector<IntPoly>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int sturm_count(const IntPoly& p0, const Rational& lo, const Rational& hi) {
  IntPoly p = trimmed(p0);
  if (p.empty()) throw std::invalid_argument("sturm_count: zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("sturm_count: empty interval");
  if (!is_squarefree(p)) throw std::invalid_argument("sturm_count: polynomial is not squarefree");
  if (p.size() == 1) return 0;
  auto chain = sturm_chain(p);
  return variations(chain, lo) - variations(chain, hi);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const IntPoly& p0) {
  IntPoly p = trimmed(p0);
  if (!is_squarefree(p)) throw std::invalid_argument("isolate_real_roots: polynomial is not squarefree");
  std::vector<std::pair<Rational, Rational>> out;
  if (p.size() <= 1) return out;
  // Cauchy bound: every root has |x| < 1 + max |c_i / c_n|.
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Rational(abs(p[i]), abs(p.back())));
  bound += 1;
  auto chain = sturm_chain(p);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = variations(chain, lo) - variations(chain, hi);
    if (n == 0) continue;
    if (n == 1) {
      out.emplace_back(lo, hi);
      continue;
    }
    Rational mid = (lo + hi) / 2;
    stack.emplace_back(mid, hi);
    stack.emplace_back(lo, mid);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Real refine_root(const IntPoly& p, const Rational& lo0, const Rational& hi0, unsigned digits) {
  PrecisionScope scope(digits + 10);
  Rational lo = lo0, hi = hi0;
  int slo = sign_at(p, lo);
  if (sign_at(p, hi) == 0) return Real(hi);
  // Exact bisection until the interval is narrow enough for Newton.
  for (int it = 0; it < 200 && (hi - lo) > Rational(1, 1000000); ++it) {
    Rational mid = (lo + hi) / 2;
    int s = sign_at(p, mid);
    if (s == 0) return Real(mid);
    if (s == slo) lo = mid;
    else hi = mid;
  }
  IntPoly dp = derivative(p);
  Real a(lo), b(hi), x = (a + b) / 2;
  const Real eps = pow(Real(10), -static_cast<long>(digits + 5));
  for (int it = 0; it < 400; ++it) {
    Real fx = evaluate(p, x);
    Real step = fx / evaluate(dp, x);
    Real nx = x - step;
    if (!(nx > a && nx < b)) {
      // Bisect on the floating interval when Newton leaves it.
      if ((evaluate(p, a) > 0) == (fx > 0)) a = x;
      else b = x;
      nx = (a + b) / 2;
    }
    if (abs(nx - x) < eps) return nx;
    x = nx;
  }
  return x;
}

}  // namespace polyincl
