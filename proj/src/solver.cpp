#include "polyincl/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "polyincl/kernels.hpp"

namespace polyincl {

Orientation Placement::orientation() const {
  if (dim == 2) return Orientation::planar(rotation_params.at(0).convert_to<double>());
  Eigen::Quaterniond q(rotation_params.at(0).convert_to<double>(), rotation_params.at(1).convert_to<double>(),
                       rotation_params.at(2).convert_to<double>(), rotation_params.at(3).convert_to<double>());
  return Orientation::spatial(q);
}

Placement make_placement(const Polytope& p, const Polytope& q, const Real& sigma, const Orientation& rot,
                         const Eigen::VectorXd& centroid, bool reflected, unsigned digits) {
  PrecisionScope scope(digits);
  std::vector<Real> params;
  if (rot.dim == 2) params = {cos(Real(rot.angle)), sin(Real(rot.angle))};
  else params = {Real(rot.q.w()), Real(rot.q.x()), Real(rot.q.y()), Real(rot.q.z())};
  Point c;
  for (int j = 0; j < centroid.size(); ++j) c.emplace_back(centroid(j));
  return make_placement(p, q, sigma, params, c, reflected, digits);
}

Placement make_placement(const Polytope& p, const Polytope& q, const Real& sigma,
                         const std::vector<Real>& rotation_params, const Point& centroid, bool reflected,
                         unsigned digits) {
  PrecisionScope scope(digits);
  const int dim = p.dim();
  if (static_cast<int>(rotation_params.size()) != (dim == 2 ? 2 : 4) || static_cast<int>(centroid.size()) != dim)
    throw std::invalid_argument("make_placement: parameter size mismatch");
  Placement pl;
  pl.dim = dim;
  pl.reflected = reflected;
  pl.sigma = at_precision(sigma, digits);
  pl.s = pl.sigma * pl.sigma;
  pl.rotation.assign(static_cast<std::size_t>(dim), Point(static_cast<std::size_t>(dim), Real(0)));
  if (dim == 2) {
    Real c = at_precision(rotation_params[0], digits), s = at_precision(rotation_params[1], digits);
    Real len = sqrt(c * c + s * s);
    c /= len, s /= len;
    pl.rotation_params = {atan2(s, c)};
    pl.rotation[0] = {c, -s};
    pl.rotation[1] = {s, c};
  } else {
    Real w = at_precision(rotation_params[0], digits), x = at_precision(rotation_params[1], digits),
         y = at_precision(rotation_params[2], digits), z = at_precision(rotation_params[3], digits);
    Real len = sqrt(w * w + x * x + y * y + z * z);
    w /= len, x /= len, y /= len, z /= len;
    if (w < 0) w = -w, x = -x, y = -y, z = -z;
    pl.rotation_params = {w, x, y, z};
    pl.rotation[0] = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)};
    pl.rotation[1] = {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)};
    pl.rotation[2] = {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)};
  }
  std::vector<Point> ws = p.vertices();
  if (reflected)
    for (auto& v : ws) v[0] = -v[0];
  Point cp(static_cast<std::size_t>(dim), Real(0));
  for (const auto& v : ws)
    for (int j = 0; j < dim; ++j) cp[j] += v[j];
  for (auto& x : cp) x /= static_cast<long>(ws.size());
  auto rotate = [&](const Point& v) {
    Point out(static_cast<std::size_t>(dim), Real(0));
    for (int r = 0; r < dim; ++r) out[r] = dot(pl.rotation[r], v);
    return out;
  };
  Point rc = rotate(cp);
  pl.translation.resize(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) pl.translation[j] = at_precision(centroid[j], digits) - pl.sigma * rc[j];
  pl.achieved_tol = Real(0);
  for (const auto& v : ws) {
    Point x = pl.sigma * rotate(v) + pl.translation;
    pl.achieved_tol = max(pl.achieved_tol, max_violation(q, x));
    pl.vertices.push_back(std::move(x));
  }
  return pl;
}

ScaleSolution max_scale_lp(const Polytope& p, const Polytope& q, const Eigen::MatrixXd& rotation,
                           SymmetryConstraint symmetry) {
  auto prob = ContainmentProblem::build(p, q, symmetry);
  if (rotation.rows() != prob.dim || rotation.cols() != prob.dim)
    throw std::invalid_argument("rotation dimension mismatch");
  Eigen::MatrixXd rtr = rotation.transpose() * rotation - Eigen::MatrixXd::Identity(prob.dim, prob.dim);
  if (rtr.cwiseAbs().maxCoeff() > 1e-9) throw std::invalid_argument("rotation is not orthogonal");
  return evaluate_scale(prob, rotation);
}

namespace {

struct Candidate {
  LocalResult local;
  bool mirrored = false;
  std::vector<long long> key;  // rounded vertex matrix for tie-breaking
};

std::vector<long long> vertex_key(const ContainmentProblem& prob, const LocalResult& r) {
  const Eigen::MatrixXd rot = r.orientation.matrix();
  std::vector<long long> key;
  for (int i = 0; i < prob.n(); ++i) {
    Eigen::VectorXd v = r.sigma * (rot * prob.vertices.row(i).transpose()) + r.translation;
    for (int j = 0; j < prob.dim; ++j) key.push_back(std::llround(v(j) * 1e8));
  }
  return key;
}

}  // namespace

SolveReport solve_global(const Polytope& p, const Polytope& q, const SolveConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (config.starts <= 0 && config.grid <= 0) throw std::invalid_argument("solve_global: zero starts and zero grid");
  if (q.dim() > 3 && !config.generic_path) throw std::invalid_argument("solve_global: dimension > 3 needs generic path");
  if (q.dim() < 2 || q.dim() > 3) throw std::invalid_argument("solve_global: rotation search supports dimensions 2 and 3");
  if (p.dim() > q.dim()) throw std::invalid_argument("solve_global: dim(P) > dim(Q)");

  SolveReport report;
  report.seed = config.seed;
  report.precision = config.feasibility_tol;
  report.p_label = p.name();
  report.q_label = q.name();

  std::vector<Candidate> candidates;
  std::vector<bool> mirrors{false};
  if (config.allow_reflections) mirrors.push_back(true);
  for (bool mirror : mirrors) {
    auto prob = ContainmentProblem::build(p, q, config.symmetry, mirror);
    std::vector<Orientation> starts;
    if (config.grid > 0) {
      const int res = prob.dim == 2 ? config.grid * config.grid : config.grid;
      auto grid = kernels::rotation_grid(prob.dim, res);
      auto values = config.parallel ? kernels::scale_batch_parallel(prob, grid) : kernels::scale_batch_serial(prob, grid);
      report.grid_points += static_cast<int>(grid.size());
      auto maxima = kernels::grid_local_maxima(prob.dim, res, values);
      std::stable_sort(maxima.begin(), maxima.end(), [&](int a, int b) { return values[a] > values[b]; });
      if (static_cast<int>(maxima.size()) > config.max_polish) maxima.resize(static_cast<std::size_t>(config.max_polish));
      for (int idx : maxima) starts.push_back(grid[idx]);
    }
    std::mt19937_64 rng(config.seed + (mirror ? 7919u : 0u));
    for (int i = 0; i < config.starts; ++i) starts.push_back(Orientation::random(prob.dim, rng));
    report.starts_used += static_cast<int>(starts.size());
    auto results = config.parallel ? kernels::polish_batch_parallel(prob, starts, config.polish)
                                   : kernels::polish_batch_serial(prob, starts, config.polish);
    for (auto& r : results) {
      if (r.sigma <= 0) continue;
      Candidate c{r, mirror, vertex_key(prob, r)};
      candidates.push_back(std::move(c));
    }
  }
  if (candidates.empty()) throw std::runtime_error("solve_global: no feasible placement found");

  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.local.sigma != b.local.sigma) return a.local.sigma > b.local.sigma;
    return a.key < b.key;
  });

  // Cluster by sigma; each cluster is represented by its lexicographically
  // smallest vertex matrix.
  struct Cluster {
    double sigma;
    int hits;
    const Candidate* rep;
  };
  std::vector<Cluster> clusters;
  for (const auto& c : candidates) {
    if (!clusters.empty() && std::abs(clusters.back().sigma - c.local.sigma) <= 1e-9 * std::max(1.0, c.local.sigma)) {
      auto& cl = clusters.back();
      ++cl.hits;
      if (c.key < cl.rep->key) cl.rep = &c;
      continue;
    }
    clusters.push_back({c.local.sigma, 1, &c});
  }
  for (const auto& cl : clusters) {
    const Candidate& c = *cl.rep;
    LocalOptimum lo;
    lo.placement = make_placement(p, q, Real(c.local.sigma), c.local.orientation, c.local.translation, c.mirrored);
    lo.sigma = lo.placement.sigma;
    lo.s = lo.placement.s;
    lo.hits = cl.hits;
    report.local_optima.push_back(std::move(lo));
  }
  report.best = report.local_optima.front().placement;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

Placement polish_local(const Polytope& p, const Polytope& q, const Placement& start, double tol,
                       SymmetryConstraint symmetry) {
  if (start.achieved_tol > Real("1e-3")) throw std::invalid_argument("polish_local: start placement is infeasible");
  auto prob = ContainmentProblem::build(p, q, symmetry, start.reflected);
  PolishOptions opts;
  opts.stationarity_tol = tol;
  auto res = polish_orientation(prob, start.orientation(), opts);
  if (!res.converged) throw std::runtime_error("polish_local: no convergence in " + std::to_string(res.iterations) + " iterations");
  Placement out = make_placement(p, q, Real(res.sigma), res.orientation, res.translation, start.reflected,
                                 std::max(kDefaultDigits, static_cast<unsigned>(start.sigma.precision())));
  if (out.sigma < start.sigma - Real("1e-12")) return start;
  return out;
}

nlohmann::json placement_to_json(const Placement& pl, unsigned digits) {
  auto vec = [digits](const Point& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(to_decimal(x, digits));
    return a;
  };
  nlohmann::json rot = nlohmann::json::array();
  for (const auto& r : pl.rotation) rot.push_back(vec(r));
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : pl.vertices) verts.push_back(vec(v));
  return {{"sigma", to_decimal(pl.sigma, digits)},
          {"s", to_decimal(pl.s, digits)},
          {"rotation", rot},
          {"rotation_params", vec(pl.rotation_params)},
          {"translation", vec(pl.translation)},
          {"vertices", verts},
          {"reflected", pl.reflected},
          {"achieved_tol", to_decimal(pl.achieved_tol, 3)}};
}

nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json j = placement_to_json(report.best);
  nlohmann::json optima = nlohmann::json::array();
  for (const auto& lo : report.local_optima)
    optima.push_back({{"s", to_decimal(lo.s, 20)}, {"sigma", to_decimal(lo.sigma, 20)}, {"hits", lo.hits}});
  j["local_optima"] = optima;
  j["seed"] = report.seed;
  j["tolerance"] = to_decimal(Real(report.precision), 3);
  j["starts"] = report.starts_used;
  j["grid_points"] = report.grid_points;
  j["P"] = report.p_label;
  j["Q"] = report.q_label;
  return j;
}

}  // namespace polyincl
