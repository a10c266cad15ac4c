#include "polyincl/lll.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyincl {

namespace {

Integer dot(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  Integer s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

}  // namespace

LllStats lll_reduce(IntMatrix& b, const LllOptions& opts) {
  const std::size_t n = b.size();
  LllStats stats;
  if (n < 2) return stats;
  const unsigned bits = opts.float_bits ? opts.float_bits : static_cast<unsigned>(3 * n + 120);
  PrecisionScope scope(static_cast<unsigned>(bits * 0.30103) + 1);
  using F = Real;
  std::vector<std::vector<F>> mu(n, std::vector<F>(n, F(0)));
  std::vector<std::vector<F>> r(n, std::vector<F>(n, F(0)));
  const F delta(opts.delta), eta(opts.eta);

  // Row k of the Gram-Schmidt data from exact inner products.
  auto gso_row = [&](std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j) {
      F v(dot(b[k], b[j]));
      for (std::size_t i = 0; i < j; ++i) v -= mu[j][i] * r[k][i];
      r[k][j] = v;
      if (j < k) mu[k][j] = v / r[j][j];
    }
  };

  gso_row(0);
  if (r[0][0] == 0) throw std::invalid_argument("lll_reduce: zero basis vector");
  std::size_t k = 1;
  while (k < n) {
    // Lazy size reduction: repeat until every |mu_kj| <= eta.
    for (int pass = 0;; ++pass) {
      gso_row(k);
      bool changed = false;
      for (std::size_t j = k; j-- > 0;) {
        if (abs(mu[k][j]) <= eta) continue;
        const F x = round(mu[k][j]);
        const Integer xi = x.convert_to<Integer>();
        if (xi == 0) continue;
        for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= xi * b[j][c];
        for (std::size_t i = 0; i < j; ++i) mu[k][i] -= x * mu[j][i];
        mu[k][j] -= x;
        changed = true;
        ++stats.size_reductions;
      }
      if (!changed) break;
      if (pass > 1000) throw std::runtime_error("lll_reduce: size reduction does not settle; raise float_bits");
    }
    // Lovasz condition with r_kk = |b_k*|^2.
    if (delta * r[k - 1][k - 1] <= r[k][k] + mu[k][k - 1] * r[k][k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      ++stats.swaps;
      if (k > 1) --k;
      else gso_row(0);
    }
  }
  return stats;
}

}  // namespace polyincl
