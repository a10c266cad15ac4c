#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "polyincl/geometry.hpp"

namespace polyincl {

/// Rotation of the plane (angle) or of space (unit quaternion).
struct Orientation {
  int dim = 3;
  Eigen::Quaterniond q = Eigen::Quaterniond::Identity();
  double angle = 0.0;

  static Orientation identity(int dim);
  static Orientation planar(double angle);
  static Orientation spatial(const Eigen::Quaterniond& q);
  /// R = Rz(alpha) Ry(beta) Rz(gamma).
  static Orientation euler_zyz(double alpha, double beta, double gamma);
  static Orientation random(int dim, std::mt19937_64& rng);

  Eigen::MatrixXd matrix() const;
  /// this * Exp(omega), omega a tangent vector (1 entry in 2D, 3 in 3D).
  Orientation retract(const Eigen::VectorXd& omega) const;
  /// Quaternion (w, x, y, z) or the single angle.
  std::vector<double> params() const;
};

/// How the placed copy is tied to Q beyond containment.
enum class SymmetryMode { None, Concentric, VertexPinned, Both };

struct SymmetryConstraint {
  SymmetryMode mode = SymmetryMode::None;
  int pinned_vertex = 0;
  int pinned_facet = 0;

  bool concentric() const { return mode == SymmetryMode::Concentric || mode == SymmetryMode::Both; }
  bool pinned() const { return mode == SymmetryMode::VertexPinned || mode == SymmetryMode::Both; }
};

/// Double-precision snapshot of a (P, Q) pair. P's vertices are stored relative
/// to P's centroid, so the translation of a placement is the placed centroid.
struct ContainmentProblem {
  int dim = 3;
  Eigen::MatrixXd vertices;  // n x dim, centered
  Eigen::VectorXd p_centroid;
  Eigen::MatrixXd normals;   // m x dim, unit rows
  Eigen::VectorXd offsets;   // m
  Eigen::VectorXd q_center;  // strictly interior point of Q (vertex centroid)
  SymmetryConstraint symmetry;
  bool mirrored = false;

  static ContainmentProblem build(const Polytope& p, const Polytope& q, SymmetryConstraint symmetry = {},
                                  bool mirror = false);
  int n() const { return static_cast<int>(vertices.rows()); }
  int m() const { return static_cast<int>(normals.rows()); }
};

/// Largest sigma (and a translation) with sigma R w_i + t in Q for all i.
struct ScaleSolution {
  bool feasible = false;
  double sigma = 0.0;
  Eigen::VectorXd translation;  // placed centroid
  std::vector<double> duals;    // per facet of Q (support-function rows)
};

ScaleSolution evaluate_scale(const ContainmentProblem& prob, const Eigen::MatrixXd& rotation);

struct PolishOptions {
  int max_iterations = 400;
  double initial_radius = 0.05;  // radians
  double stationarity_tol = 1e-14;
};

struct LocalResult {
  bool converged = false;
  int iterations = 0;
  double sigma = 0.0;
  Orientation orientation;
  Eigen::VectorXd translation;
};

/// Trust-region sequential LP ascent in (sigma, t, rotation). The linearized
/// rotation enters through u = sigma * omega, which keeps each subproblem an LP.
LocalResult polish_orientation(const ContainmentProblem& prob, const Orientation& start,
                               const PolishOptions& opts = {});

}  // namespace polyincl
