#include "polyincl/refine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

namespace polyincl {

namespace {

Real max_abs(const RealVector& v) {
  Real m(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) m = max(m, abs(v(i)));
  return m;
}

double log10_of(const Real& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  return log10(x).convert_to<double>();
}

Real ten_to_minus(unsigned digits) { return pow(Real(10), -static_cast<long>(digits)); }

}  // namespace

NewtonResult newton_solve(const SystemFn& fn, const RealVector& seed, unsigned target_digits,
                          const NewtonOptions& opts) {
  NewtonResult out;
  unsigned correct = std::max(1u, opts.seed_digits);
  RealVector z = seed;
  Real prev_res(-1);
  bool have_prev = false;
  for (int it = 0;; ++it) {
    const unsigned work = std::min(2 * correct, 2 * target_digits) + opts.guard_digits;
    PrecisionScope scope(work);
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = at_precision(z(i), work);
    RealVector f;
    RealMatrix jac;
    fn(z, f, &jac);
    const Real res = max_abs(f);
    out.log10_residual.push_back(log10_of(res));
    out.working_digits.push_back(work);
    if (isnan(res)) throw RefineError("newton: residual is not a number");
    if (have_prev) {
      if (it == 1 && prev_res > ten_to_minus(target_digits) && res * 2 > prev_res)
        throw RefineError("newton: first step did not halve the residual (seed outside the basin)");
      if (res > prev_res * 1000 && res > ten_to_minus(opts.seed_digits / 2))
        throw RefineError("newton: divergence");
    }
    const Real tol = ten_to_minus(target_digits);
    if ((correct >= target_digits && res < tol) || res == 0) {
      out.z = z;
      out.residual = res;
      out.digits = target_digits;
      out.iterations = it;
      return out;
    }
    if (it >= opts.max_iterations) throw RefineError("newton: iteration budget exhausted");

    RealVector step;
    if (opts.least_squares || jac.rows() != jac.cols()) {
      Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(jac);
      cod.setThreshold(Real("1e-30"));
      step = cod.solve(-f);
    } else {
      Eigen::FullPivLU<RealMatrix> lu(jac);
      if (!lu.isInvertible()) throw RefineError("newton: singular Jacobian at iterate");
      step = lu.solve(-f);
    }
    z += step;
    const Real len = max_abs(step);
    // Quadratic convergence: the error after a step of size 10^-k is ~10^-2k.
    unsigned next = work - opts.guard_digits;
    if (len > 0) {
      double k = -log10_of(len);
      if (k < 1) k = 1;
      next = std::min<unsigned>(next, static_cast<unsigned>(2 * k));
    }
    correct = std::max(correct, next);
    prev_res = res;
    have_prev = true;
  }
}

// ---------------------------------------------------------------------------

int IncidenceSystem::unknowns() const {
  const int rot = dim() == 2 ? 2 : 4;
  return 1 + rot + (chart == Chart::Uniform ? dim() : 0);
}

std::vector<int> IncidenceSystem::per_vertex_counts() const {
  std::vector<int> counts(p.vertices().size(), 0);
  for (const auto& inc : incidences) ++counts[static_cast<std::size_t>(inc.vertex)];
  return counts;
}

IncidenceSystem detect_incidences(const Placement& placement, const Polytope& p, const Polytope& q, double tol) {
  if (placement.vertices.size() != p.vertices().size() || placement.dim != q.dim())
    throw std::invalid_argument("detect_incidences: placement does not match P and Q");
  IncidenceSystem sys{p, q};
  sys.reflected = placement.reflected;
  sys.detection_tol = Real(tol);
  const Real t(tol);
  for (std::size_t i = 0; i < placement.vertices.size(); ++i)
    for (std::size_t k = 0; k < q.halfspaces().size(); ++k) {
      const auto& h = q.halfspaces()[k];
      Real slack = h.offset - dot(h.normal, placement.vertices[i]);
      if (slack < -t) throw IncidenceError("detect_incidences: placement infeasible beyond tolerance", 0, 0);
      if (slack < t) sys.incidences.push_back({static_cast<int>(i), static_cast<int>(k)});
    }
  if (sys.incidences.empty())
    throw IncidenceError("detect_incidences: no incidences (under-determined placement)", 0, sys.required());
  return sys;
}

namespace {

// Polytope data of one system at one working precision.
struct SystemData {
  std::vector<Point> w;        // centered (and mirrored) vertices of P
  std::vector<Halfspace> h;
  Point q_center;
};

SystemData materialize(const IncidenceSystem& sys, unsigned digits) {
  PrecisionScope scope(digits);
  SystemData d;
  Polytope p = sys.p.at_precision(digits);
  Polytope q = sys.q.at_precision(digits);
  d.w = p.vertices();
  if (sys.reflected)
    for (auto& v : d.w) v[0] = -v[0];
  Point c(static_cast<std::size_t>(sys.dim()), Real(0));
  for (const auto& v : d.w) c = c + v;
  c = Real(1) / Real(static_cast<long>(d.w.size())) * c;
  for (auto& v : d.w) v = v - c;
  d.h = q.halfspaces();
  d.q_center = q.centroid();
  return d;
}

// R(q) and its partial derivatives for the rotation parameters.
struct RotationJet {
  std::vector<std::vector<Real>> r;                 // dim x dim
  std::vector<std::vector<std::vector<Real>>> dr;   // per parameter
};

RotationJet rotation_jet(int dim, const RealVector& z) {
  RotationJet j;
  if (dim == 2) {
    const Real c = z(1), s = z(2);
    j.r = {{c, -s}, {s, c}};
    j.dr = {{{Real(1), Real(0)}, {Real(0), Real(1)}}, {{Real(0), Real(-1)}, {Real(1), Real(0)}}};
    return j;
  }
  const Real w = z(1), x = z(2), y = z(3), zz = z(4);
  j.r = {{1 - 2 * (y * y + zz * zz), 2 * (x * y - w * zz), 2 * (x * zz + w * y)},
         {2 * (x * y + w * zz), 1 - 2 * (x * x + zz * zz), 2 * (y * zz - w * x)},
         {2 * (x * zz - w * y), 2 * (y * zz + w * x), 1 - 2 * (x * x + y * y)}};
  const Real two(2);
  j.dr = {{{Real(0), -two * zz, two * y}, {two * zz, Real(0), -two * x}, {-two * y, two * x, Real(0)}},
          {{Real(0), two * y, two * zz}, {two * y, -4 * x, -two * w}, {two * zz, two * w, -4 * x}},
          {{-4 * y, two * x, two * w}, {two * x, Real(0), two * zz}, {-two * w, two * zz, -4 * y}},
          {{-4 * zz, -two * w, two * x}, {two * w, -4 * zz, two * y}, {two * x, two * y, Real(0)}}};
  return j;
}

Real apply_row(const std::vector<Real>& row, const Point& v) {
  Real s(0);
  for (std::size_t j = 0; j < v.size(); ++j) s += row[j] * v[j];
  return s;
}

Point apply(const std::vector<std::vector<Real>>& m, const Point& v) {
  Point out;
  for (const auto& row : m) out.push_back(apply_row(row, v));
  return out;
}

}  // namespace

SystemFn incidence_function(const IncidenceSystem& sys, bool all_rows) {
  auto cache = std::make_shared<std::map<unsigned, SystemData>>();
  std::vector<Incidence> rows;
  if (all_rows) rows = sys.incidences;
  else
    for (int idx : sys.selected) rows.push_back(sys.incidences[static_cast<std::size_t>(idx)]);
  const int dim = sys.dim();
  const int rot = dim == 2 ? 2 : 4;
  const bool free_t = sys.chart == Chart::Uniform;
  const int nvar = sys.unknowns();
  return [sys, cache, rows, dim, rot, free_t, nvar](const RealVector& z, RealVector& f, RealMatrix* jac) {
    const unsigned digits = static_cast<unsigned>(z(0).precision());
    auto it = cache->find(digits);
    if (it == cache->end()) it = cache->emplace(digits, materialize(sys, digits)).first;
    const SystemData& d = it->second;
    const RotationJet rj = rotation_jet(dim, z);
    Point t(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) t[j] = free_t ? z(1 + rot + j) : d.q_center[j];
    const Real& sigma = z(0);

    const auto nrows = static_cast<Eigen::Index>(rows.size() + 1);
    f.resize(nrows);
    if (jac) jac->setZero(nrows, nvar);
    Real qq(0);
    for (int j = 0; j < rot; ++j) qq += z(1 + j) * z(1 + j);
    f(0) = qq - 1;
    if (jac)
      for (int j = 0; j < rot; ++j) (*jac)(0, 1 + j) = 2 * z(1 + j);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& w = d.w[static_cast<std::size_t>(rows[r].vertex)];
      const auto& h = d.h[static_cast<std::size_t>(rows[r].facet)];
      const Point rw = apply(rj.r, w);
      const Real arw = dot(h.normal, rw);
      const auto e = static_cast<Eigen::Index>(r + 1);
      f(e) = sigma * arw + dot(h.normal, t) - h.offset;
      if (!jac) continue;
      (*jac)(e, 0) = arw;
      for (int j = 0; j < rot; ++j) (*jac)(e, 1 + j) = sigma * dot(h.normal, apply(rj.dr[static_cast<std::size_t>(j)], w));
      if (free_t)
        for (int j = 0; j < dim; ++j) (*jac)(e, 1 + rot + j) = h.normal[j];
    }
  };
}

RealVector seed_vector(const IncidenceSystem& sys, const Placement& seed) {
  const int dim = sys.dim();
  RealVector z(sys.unknowns());
  z(0) = seed.sigma;
  if (dim == 2) {
    z(1) = seed.rotation[0][0];
    z(2) = seed.rotation[1][0];
  } else {
    for (int j = 0; j < 4; ++j) z(1 + j) = seed.rotation_params[static_cast<std::size_t>(j)];
  }
  if (sys.chart == Chart::Uniform) {
    const int rot = dim == 2 ? 2 : 4;
    for (int j = 0; j < dim; ++j) {
      Real c(0);
      for (const auto& v : seed.vertices) c += v[j];
      z(1 + rot + j) = c / static_cast<long>(seed.vertices.size());
    }
  }
  return z;
}

IncidenceSystem build_square_system(IncidenceSystem sys, const Placement& seed, Chart chart,
                                    const std::vector<Incidence>& avoid) {
  sys.chart = chart;
  sys.selected.clear();
  sys.chart_note = chart == Chart::Uniform ? "uniform chart: sigma, unit quaternion, translation"
                                           : "concentric chart: translation pinned to the center of Q";
  if (sys.dim() == 2)
    sys.chart_note = chart == Chart::Uniform ? "uniform chart: sigma, (cos, sin), translation"
                                             : "concentric chart: sigma, (cos, sin); translation pinned to the center of Q";
  if (chart == Chart::Concentric) {
    Point qc = sys.q.centroid();
    for (int j = 0; j < sys.dim(); ++j) {
      Real c(0);
      for (const auto& v : seed.vertices) c += v[j];
      c /= static_cast<long>(seed.vertices.size());
      if (abs(c - qc[j]) > sys.detection_tol)
        throw std::invalid_argument("build_square_system: seed is not concentric with Q");
    }
  }
  RealVector f;
  RealMatrix jac;
  incidence_function(sys, true)(seed_vector(sys, seed), f, &jac);
  const Eigen::MatrixXd j = jac.cast<double>();

  // Greedy row pivoting: the norm row first, then the row with the largest
  // component orthogonal to the rows already chosen.
  std::vector<Eigen::VectorXd> basis{j.row(0).transpose().normalized()};
  auto residual_ratio = [&](int r) {
    Eigen::VectorXd v = j.row(r).transpose();
    const double n0 = v.norm();
    if (n0 == 0) return 0.0;
    for (const auto& e : basis) v -= v.dot(e) * e;
    return v.norm() / n0;
  };
  auto avoided = [&](int idx) {
    return std::find(avoid.begin(), avoid.end(), sys.incidences[static_cast<std::size_t>(idx)]) != avoid.end();
  };
  std::vector<bool> used(sys.incidences.size(), false);
  const int need = sys.required();
  auto pick = [&](bool allow_avoided) {
    int best = -1;
    double best_ratio = 1e-8;
    for (std::size_t idx = 0; idx < sys.incidences.size(); ++idx) {
      if (used[idx] || (!allow_avoided && avoided(static_cast<int>(idx)))) continue;
      double ratio = residual_ratio(static_cast<int>(idx) + 1);
      if (ratio > best_ratio * (1 + 1e-9)) best = static_cast<int>(idx), best_ratio = ratio;
    }
    return best;
  };
  auto take = [&](int idx) {
    Eigen::VectorXd v = j.row(idx + 1).transpose();
    for (const auto& e : basis) v -= v.dot(e) * e;
    basis.push_back(v.normalized());
    used[static_cast<std::size_t>(idx)] = true;
    sys.selected.push_back(idx);
  };
  while (static_cast<int>(sys.selected.size()) < need) {
    int idx = pick(false);
    if (idx < 0) idx = pick(true);
    if (idx < 0) break;
    take(idx);
  }
  // Rank of the full system (norm row included).
  {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(j);
    lu.setThreshold(1e-8);
    sys.rank = static_cast<int>(lu.rank());
  }
  std::sort(sys.selected.begin(), sys.selected.end());
  if (!sys.square()) {
    const int found = static_cast<int>(sys.selected.size());
    throw IncidenceError("build_square_system: Jacobian rank-deficient at seed (" + std::to_string(found) + " of " +
                             std::to_string(need) + " independent incidences)",
                         found, need);
  }
  return sys;
}

HighPrecisionSolution newton_refine(const IncidenceSystem& sys, const Placement& seed, unsigned target_digits,
                                    const NewtonOptions& opts) {
  HighPrecisionSolution out;
  NewtonOptions o = opts;
  out.least_squares = !sys.square() || opts.least_squares;
  o.least_squares = out.least_squares;
  NewtonResult nr = newton_solve(incidence_function(sys, out.least_squares), seed_vector(sys, seed), target_digits, o);
  out.convergence_log = nr.log10_residual;
  out.digits = nr.digits;
  out.residual = nr.residual;

  const unsigned work = static_cast<unsigned>(nr.z(0).precision());
  PrecisionScope scope(work);
  RealVector f;
  incidence_function(sys, true)(nr.z, f, nullptr);
  out.full_residual = max_abs(f);

  const int dim = sys.dim();
  const int rot = dim == 2 ? 2 : 4;
  std::vector<Real> params;
  for (int j = 0; j < rot; ++j) params.push_back(nr.z(1 + j));
  Point centroid;
  Polytope q = sys.q.at_precision(work);
  if (sys.chart == Chart::Uniform)
    for (int j = 0; j < dim; ++j) centroid.push_back(nr.z(1 + rot + j));
  else
    centroid = q.centroid();
  out.placement = make_placement(sys.p.at_precision(work), q, nr.z(0), params, centroid, sys.reflected, work);
  out.feasibility = out.placement.achieved_tol;
  for (Eigen::Index i = 0; i < nr.z.size(); ++i) out.values.push_back(to_decimal(nr.z(i), target_digits));

  const unsigned slack = std::min(target_digits, 10u);
  if (out.full_residual > ten_to_minus(target_digits - slack))
    throw RefineError("newton_refine: full incidence system not satisfied (residual 1e" +
                      std::to_string(static_cast<long>(log10_of(out.full_residual))) + ")");
  if (out.feasibility > ten_to_minus(std::min(target_digits, 30u)))
    throw RefineError("newton_refine: refined placement leaves Q");
  return out;
}

nlohmann::json solution_to_json(const HighPrecisionSolution& sol, const IncidenceSystem& sys) {
  nlohmann::json inc = nlohmann::json::array();
  for (const auto& i : sys.incidences) inc.push_back({i.vertex, i.facet});
  nlohmann::json sel = nlohmann::json::array();
  for (int s : sys.selected) sel.push_back(s);
  nlohmann::json log = nlohmann::json::array();
  for (double r : sol.convergence_log) log.push_back(std::isfinite(r) ? r : -1e9);
  return {{"values", sol.values},
          {"sigma", to_decimal(sol.placement.sigma, sol.digits)},
          {"digits", sol.digits},
          {"residual", to_decimal(sol.residual, 3)},
          {"full_residual", to_decimal(sol.full_residual, 3)},
          {"convergence_log", log},
          {"least_squares", sol.least_squares},
          {"chart", sys.chart_note},
          {"incidences", inc},
          {"selected", sel}};
}

}  // namespace polyincl
