#include "polyincl/containment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polyincl/simplex.hpp"

namespace polyincl {

Orientation Orientation::identity(int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("orientation: dimension must be 2 or 3");
  Orientation o;
  o.dim = dim;
  return o;
}

Orientation Orientation::planar(double angle) {
  Orientation o;
  o.dim = 2;
  o.angle = angle;
  return o;
}

Orientation Orientation::spatial(const Eigen::Quaterniond& q) {
  Orientation o;
  o.dim = 3;
  o.q = q.normalized();
  return o;
}

Orientation Orientation::euler_zyz(double alpha, double beta, double gamma) {
  Eigen::Quaterniond q = Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitZ()) *
                         Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitY()) *
                         Eigen::AngleAxisd(gamma, Eigen::Vector3d::UnitZ());
  return spatial(q);
}

Orientation Orientation::random(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (dim == 2) return planar(2 * std::numbers::pi * unif(rng));
  // Shoemake's uniform quaternion.
  double u1 = unif(rng), u2 = unif(rng), u3 = unif(rng);
  double a = std::sqrt(1 - u1), b = std::sqrt(u1);
  Eigen::Quaterniond q(b * std::cos(2 * std::numbers::pi * u3), a * std::sin(2 * std::numbers::pi * u2),
                       a * std::cos(2 * std::numbers::pi * u2), b * std::sin(2 * std::numbers::pi * u3));
  return spatial(q);
}

Eigen::MatrixXd Orientation::matrix() const {
  if (dim == 2) {
    Eigen::MatrixXd r(2, 2);
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
  }
  return q.toRotationMatrix();
}

Orientation Orientation::retract(const Eigen::VectorXd& omega) const {
  if (dim == 2) return planar(angle + omega(0));
  Eigen::Vector3d w = omega.head<3>();
  double len = w.norm();
  if (len == 0.0) return *this;
  return spatial(q * Eigen::Quaterniond(Eigen::AngleAxisd(len, w / len)));
}

std::vector<double> Orientation::params() const {
  if (dim == 2) return {angle};
  return {q.w(), q.x(), q.y(), q.z()};
}

ContainmentProblem ContainmentProblem::build(const Polytope& p, const Polytope& q, SymmetryConstraint symmetry,
                                             bool mirror) {
  if (p.vertices().empty()) throw std::invalid_argument("P needs a V-representation");
  if (q.halfspaces().empty() || q.vertices().empty()) throw std::invalid_argument("Q needs both representations");
  if (p.dim() != q.dim()) throw std::invalid_argument("P and Q must have the same dimension here");
  ContainmentProblem prob;
  prob.dim = q.dim();
  Eigen::MatrixXd w = p.vertex_matrix();
  if (mirror) w.col(0) = -w.col(0);
  prob.p_centroid = w.colwise().mean().transpose();
  prob.vertices = w.rowwise() - prob.p_centroid.transpose();
  prob.normals = q.normal_matrix();
  prob.offsets = q.offset_vector();
  prob.q_center = q.vertex_matrix().colwise().mean().transpose();
  prob.symmetry = symmetry;
  prob.mirrored = mirror;
  if (symmetry.pinned()) {
    if (symmetry.pinned_vertex < 0 || symmetry.pinned_vertex >= prob.n() || symmetry.pinned_facet < 0 ||
        symmetry.pinned_facet >= prob.m())
      throw std::invalid_argument("pinned vertex/facet index out of range");
  }
  return prob;
}

namespace {

constexpr double kLpEps = 1e-12;

}  // namespace

ScaleSolution evaluate_scale(const ContainmentProblem& prob, const Eigen::MatrixXd& rotation) {
  const int q = prob.dim;
  const int m = prob.m();
  // g(i, k) = a_k . R w_i ; support value h_k = max_i g(i, k).
  const Eigen::MatrixXd g = prob.vertices * (prob.normals * rotation).transpose();
  const Eigen::VectorXd h = g.colwise().maxCoeff().transpose();
  const Eigen::VectorXd slack0 = prob.offsets - prob.normals * prob.q_center;

  ScaleSolution out;
  const auto& sym = prob.symmetry;
  if (sym.concentric()) {
    double sigma = std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int k = 0; k < m; ++k)
      if (h(k) > 0 && slack0(k) / h(k) < sigma) sigma = slack0(k) / h(k), arg = k;
    if (arg < 0) throw std::runtime_error("evaluate_scale: unbounded (P has no extent)");
    out.translation = prob.q_center;
    out.duals.assign(static_cast<std::size_t>(m), 0.0);
    out.duals[static_cast<std::size_t>(arg)] = 1.0 / h(arg);
    if (sym.pinned()) {
      double gk = g(sym.pinned_vertex, sym.pinned_facet);
      if (gk <= 0) return out;
      double pinned_sigma = slack0(sym.pinned_facet) / gk;
      if (pinned_sigma > sigma * (1 + 1e-12)) return out;
      sigma = pinned_sigma;
    }
    out.feasible = true;
    out.sigma = sigma;
    return out;
  }

  // Variables y = (sigma, dt) around the interior start (0, q_center).
  std::vector<std::vector<double>> a(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(q + 1)));
  std::vector<double> b(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    a[k][0] = h(k);
    for (int j = 0; j < q; ++j) a[k][j + 1] = prob.normals(k, j);
    b[k] = slack0(k);
  }
  std::vector<double> c(static_cast<std::size_t>(q + 1), 0.0);
  c[0] = 1.0;
  LpSolution<double> sol;
  if (sym.pinned()) {
    std::vector<double> e(static_cast<std::size_t>(q + 1));
    e[0] = g(sym.pinned_vertex, sym.pinned_facet);
    for (int j = 0; j < q; ++j) e[j + 1] = prob.normals(sym.pinned_facet, j);
    // sigma >= 0 keeps the equality phase bounded when the pinned vertex faces away.
    std::vector<double> nonneg(static_cast<std::size_t>(q + 1), 0.0);
    nonneg[0] = -1.0;
    a.push_back(std::move(nonneg));
    b.push_back(0.0);
    sol = maximize_with_equalities<double>(a, b, {e}, {slack0(sym.pinned_facet)}, c, kLpEps);
  } else {
    sol = maximize_from_feasible_origin<double>(a, b, c, kLpEps);
  }
  if (sol.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.sigma = sol.x[0];
  out.translation = prob.q_center;
  for (int j = 0; j < q; ++j) out.translation(j) += sol.x[j + 1];
  out.duals.assign(sol.duals.begin(), sol.duals.begin() + m);
  return out;
}

LocalResult polish_orientation(const ContainmentProblem& prob, const Orientation& start, const PolishOptions& opts) {
  const int q = prob.dim;
  const int n = prob.n();
  const int m = prob.m();
  const int rot_dim = q == 2 ? 1 : 3;
  const bool free_t = !prob.symmetry.concentric();
  const int t_dim = free_t ? q : 0;
  const int nvar = 1 + t_dim + rot_dim;

  LocalResult res;
  res.orientation = start;
  ScaleSolution cur = evaluate_scale(prob, start.matrix());
  if (!cur.feasible) return res;
  res.sigma = cur.sigma;
  res.translation = cur.translation;

  double radius = opts.initial_radius;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  a.reserve(static_cast<std::size_t>(n * m + 2 * rot_dim));
  for (int it = 0; it < opts.max_iterations; ++it) {
    res.iterations = it + 1;
    const Eigen::MatrixXd r0 = res.orientation.matrix();
    const double sigma0 = res.sigma;
    a.clear();
    b.clear();
    std::vector<double> pinned_row;
    for (int k = 0; k < m; ++k) {
      const Eigen::VectorXd ak = prob.normals.row(k).transpose();
      const Eigen::VectorXd rta = r0.transpose() * ak;
      for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd w = prob.vertices.row(i).transpose();
        std::vector<double> row(static_cast<std::size_t>(nvar));
        row[0] = rta.dot(w);
        for (int j = 0; j < t_dim; ++j) row[1 + j] = ak(j);
        if (q == 2) {
          // d/dtheta R w = R J w with J the quarter turn.
          row[1 + t_dim] = rta(0) * -w(1) + rta(1) * w(0);
        } else {
          Eigen::Vector3d cr = Eigen::Vector3d(w(0), w(1), w(2)).cross(Eigen::Vector3d(rta(0), rta(1), rta(2)));
          for (int j = 0; j < 3; ++j) row[1 + t_dim + j] = cr(j);
        }
        double rhs = prob.offsets(k) - ak.dot(sigma0 * (r0 * w) + res.translation);
        if (prob.symmetry.pinned() && i == prob.symmetry.pinned_vertex && k == prob.symmetry.pinned_facet) {
          pinned_row = row;
          continue;
        }
        a.push_back(std::move(row));
        b.push_back(std::max(rhs, 0.0));
      }
    }
    for (int j = 0; j < rot_dim; ++j)
      for (int s : {1, -1}) {
        std::vector<double> row(static_cast<std::size_t>(nvar), 0.0);
        row[1 + t_dim + j] = s;
        a.push_back(std::move(row));
        b.push_back(radius * sigma0);
      }
    std::vector<double> c(static_cast<std::size_t>(nvar), 0.0);
    c[0] = 1.0;
    if (!pinned_row.empty()) {
      a.push_back(pinned_row);
      b.push_back(0.0);
      for (auto& x : pinned_row) x = -x;
      a.push_back(pinned_row);
      b.push_back(0.0);
    }
    auto sol = maximize_from_feasible_origin<double>(a, b, c, kLpEps);
    if (sol.status != LpStatus::Optimal) break;
    const double predicted = sol.x[0];
    if (predicted <= opts.stationarity_tol * std::max(1.0, sigma0)) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd omega(rot_dim);
    for (int j = 0; j < rot_dim; ++j) omega(j) = sol.x[static_cast<std::size_t>(1 + t_dim + j)] / (sigma0 + predicted);
    Orientation trial = res.orientation.retract(omega);
    ScaleSolution next = evaluate_scale(prob, trial.matrix());
    const double actual = next.feasible ? next.sigma - sigma0 : -1.0;
    if (actual > 0) {
      res.orientation = trial;
      res.sigma = next.sigma;
      res.translation = next.translation;
      if (actual > 0.75 * predicted && omega.cwiseAbs().maxCoeff() > 0.5 * radius) radius = std::min(2 * radius, 0.5);
      else if (actual < 0.25 * predicted) radius *= 0.5;
    } else {
      radius *= 0.25;
    }
    if (radius < 1e-15) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace polyincl
