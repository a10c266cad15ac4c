#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polyincl {

enum class LpStatus { Optimal, Unbounded, Infeasible, IterationLimit };

template <typename T>
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<T> x;       // primal point
  std::vector<T> duals;   // one multiplier per inequality row, >= 0
  T objective{};
  int pivots = 0;
};

/// Dense simplex on a dictionary with free structural variables.
///
///   maximize c.y  subject to  A y <= b,   y free,   b >= 0
///
/// The origin must be feasible (b >= 0); entries of b within -eps of zero are
/// clamped. Entering and leaving variables follow Bland's rule, ties broken by
/// the lowest index, so the pivot sequence is deterministic.
template <typename T>
LpSolution<T> maximize_from_feasible_origin(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                            const std::vector<T>& c, const T& eps, int max_pivots = 10000) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("simplex: row count mismatch");

  // dict[i][0] + sum_j dict[i][j+1] * x_nonbasic[j]; row m is the objective.
  std::vector<std::vector<T>> dict(m + 1, std::vector<T>(n + 1, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("simplex: column count mismatch");
    T rhs = b[i];
    if (rhs < 0) {
      if (rhs < -eps) throw std::invalid_argument("simplex: origin infeasible");
      rhs = T(0);
    }
    dict[i][0] = rhs;
    for (std::size_t j = 0; j < n; ++j) dict[i][j + 1] = -a[i][j];
  }
  for (std::size_t j = 0; j < n; ++j) dict[m][j + 1] = c[j];

  // Variables 0..n-1 are structural (free), n..n+m-1 are slacks (>= 0).
  std::vector<std::size_t> basic(m), nonbasic(n);
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
  for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
  auto is_free = [n](std::size_t var) { return var < n; };

  LpSolution<T> out;
  for (;;) {
    // Entering: lowest-index improving nonbasic variable.
    std::size_t enter = n;
    int dir = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const T& rc = dict[m][j + 1];
      int d = 0;
      if (rc > eps) d = 1;
      else if (is_free(nonbasic[j]) && rc < -eps) d = -1;
      if (d != 0 && (enter == n || nonbasic[j] < nonbasic[enter])) {
        enter = j;
        dir = d;
      }
    }
    if (enter == n) break;
    if (out.pivots >= max_pivots) {
      out.status = LpStatus::IterationLimit;
      return out;
    }

    // Leaving: min ratio among blocking slack rows, lowest index on ties.
    std::size_t leave = m;
    T best_ratio{};
    for (std::size_t i = 0; i < m; ++i) {
      if (is_free(basic[i])) continue;
      T rate = dict[i][enter + 1] * dir;
      if (rate >= -eps) continue;
      T ratio = dict[i][0] / (-rate);
      if (leave == m || ratio < best_ratio - eps || (!(ratio > best_ratio + eps) && basic[i] < basic[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      out.status = LpStatus::Unbounded;
      return out;
    }

    // Pivot: solve row `leave` for the entering variable.
    auto& row = dict[leave];
    const T piv = row[enter + 1];
    const T inv = T(1) / piv;
    for (std::size_t k = 0; k <= n; ++k) row[k] = (k == enter + 1) ? inv : -row[k] * inv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      T factor = dict[i][enter + 1];
      if (factor == 0) continue;
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == enter + 1) dict[i][k] = factor * row[k];
        else dict[i][k] += factor * row[k];
      }
    }
    std::swap(basic[leave], nonbasic[enter]);
    ++out.pivots;
    // Clamp roundoff on slack rows.
    for (std::size_t i = 0; i < m; ++i)
      if (!is_free(basic[i]) && dict[i][0] < 0) dict[i][0] = T(0);
  }

  out.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i)
    if (is_free(basic[i])) out.x[basic[i]] = dict[i][0];
  out.duals.assign(m, T(0));
  for (std::size_t j = 0; j < n; ++j)
    if (!is_free(nonbasic[j])) out.duals[nonbasic[j] - n] = -dict[m][j + 1];
  out.objective = dict[m][0];
  return out;
}

/// As above with additional equality rows e y = f. Each equality is reached in
/// turn by maximizing (or minimizing) its row from the current feasible point
/// and stepping back along the segment to the exact level; the equality then
/// joins the inequality system as a pair of rows.
template <typename T>
LpSolution<T> maximize_with_equalities(std::vector<std::vector<T>> a, std::vector<T> b,
                                       const std::vector<std::vector<T>>& e, const std::vector<T>& f,
                                       const std::vector<T>& c, const T& eps) {
  const std::size_t n = c.size();
  std::vector<T> shift(n, T(0));  // current feasible point
  auto shifted_rhs = [&](const std::vector<T>& row, const T& rhs) {
    T s = rhs;
    for (std::size_t j = 0; j < n; ++j) s -= row[j] * shift[j];
    return s;
  };
  auto make_rhs = [&]() {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = shifted_rhs(a[i], b[i]);
    return r;
  };

  int pivots = 0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    T level = shifted_rhs(e[k], f[k]);  // required value of e_k . y at the shifted origin
    if (level > eps || level < -eps) {
      std::vector<T> goal = e[k];
      if (level < 0)
        for (auto& g : goal) g = -g;
      auto reach = maximize_from_feasible_origin(a, make_rhs(), goal, eps);
      pivots += reach.pivots;
      if (reach.status == LpStatus::IterationLimit) return reach;
      T target = level < 0 ? -level : level;
      if (reach.status == LpStatus::Optimal && reach.objective < target - eps) {
        LpSolution<T> bad;
        bad.status = LpStatus::Infeasible;
        return bad;
      }
      if (reach.status == LpStatus::Unbounded) {
        // The ray direction alone cannot be rescaled onto the level set.
        LpSolution<T> bad;
        bad.status = LpStatus::Unbounded;
        return bad;
      }
      T scale = target / reach.objective;
      for (std::size_t j = 0; j < n; ++j) shift[j] += scale * reach.x[j];
    }
    a.push_back(e[k]);
    b.push_back(f[k]);
    std::vector<T> neg = e[k];
    for (auto& x : neg) x = -x;
    a.push_back(neg);
    b.push_back(-f[k]);
  }
  auto sol = maximize_from_feasible_origin(a, make_rhs(), c, eps);
  sol.pivots += pivots;
  if (sol.status != LpStatus::Optimal) return sol;
  T base{};
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] += shift[j];
    base += c[j] * shift[j];
  }
  sol.objective += base;
  return sol;
}

}  // namespace polyincl
