#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyincl/containment.hpp"
#include "polyincl/geometry.hpp"

namespace polyincl {

/// A positioned similar copy of P: vertices = sigma * R * w_i + translation.
struct Placement {
  int dim = 3;
  Real sigma;
  Real s;                            // sigma^2
  std::vector<Real> rotation_params; // unit quaternion (w, x, y, z) or (angle)
  std::vector<Point> rotation;       // rows of R
  Point translation;
  std::vector<Point> vertices;
  Real achieved_tol;                 // max containment violation over vertices
  bool reflected = false;            // P was mirrored (x_0 -> -x_0) before rotating

  Orientation orientation() const;
};

/// Builds the high-precision placement from a double-precision solution.
/// `centroid` is the placed position of P's vertex centroid.
Placement make_placement(const Polytope& p, const Polytope& q, const Real& sigma, const Orientation& rot,
                         const Eigen::VectorXd& centroid, bool reflected, unsigned digits = kDefaultDigits);

/// As above with exact rotation parameters: a quaternion (w, x, y, z), renormalized,
/// or a planar (cos, sin) pair, renormalized.
Placement make_placement(const Polytope& p, const Polytope& q, const Real& sigma,
                         const std::vector<Real>& rotation_params, const Point& centroid, bool reflected,
                         unsigned digits = kDefaultDigits);

struct SolveConfig {
  int starts = 32;                 // random orientations
  int grid = 60;                   // Euler steps per angle in 3D; grid^2 angles in 2D
  int max_polish = 32;             // grid local maxima handed to the local ascent
  double feasibility_tol = 1e-10;
  std::uint64_t seed = 1;
  bool allow_reflections = false;
  bool generic_path = false;
  bool parallel = true;
  SymmetryConstraint symmetry;
  PolishOptions polish;
};

struct LocalOptimum {
  Real s;
  Real sigma;
  int hits = 0;
  Placement placement;
};

struct SolveReport {
  Placement best;
  std::vector<LocalOptimum> local_optima;  // sorted by s, descending
  int starts_used = 0;
  int grid_points = 0;
  double precision = 1e-10;
  double wall_time = 0.0;                  // seconds
  std::uint64_t seed = 0;
  std::string p_label;
  std::string q_label;
};

/// Inner LP at a fixed rotation: maximize sigma over (sigma, t).
ScaleSolution max_scale_lp(const Polytope& p, const Polytope& q, const Eigen::MatrixXd& rotation,
                           SymmetryConstraint symmetry = {});

/// Deterministic grid + multistart + local ascent. Throws std::invalid_argument
/// on an empty search or on dimension > 3 without `generic_path`.
SolveReport solve_global(const Polytope& p, const Polytope& q, const SolveConfig& config = {});

/// Local ascent from a placement feasible within 1e-3. Throws
/// std::runtime_error when the ascent does not converge.
Placement polish_local(const Polytope& p, const Polytope& q, const Placement& start, double tol = 1e-14,
                       SymmetryConstraint symmetry = {});

nlohmann::json placement_to_json(const Placement& pl, unsigned digits = 20);
nlohmann::json report_to_json(const SolveReport& report);

}  // namespace polyincl
