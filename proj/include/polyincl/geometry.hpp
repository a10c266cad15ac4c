#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyincl/real.hpp"

namespace polyincl {

enum class SolidKind { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron, Polygon };

/// Builtin body: one of the five solids, or a regular polygon with `sides` >= 3.
struct SolidSpec {
  SolidKind kind = SolidKind::Cube;
  int sides = 0;

  std::string label() const;  // "T", "C", "O", "D", "I", "ngon:<n>"
  bool centrally_symmetric() const;
};

/// Parses "T", "C", "O", "D", "I" or "ngon:<n>". Throws std::invalid_argument.
SolidSpec parse_solid(const std::string& text);

/// Membership convention a.x <= b with |a| = 1.
struct Halfspace {
  Point normal;
  Real offset;
};

/// Convex polytope in both representations. Immutable after construction.
///
/// A polytope built by a generator remembers how it was made, so the same body
/// can be re-materialized at a higher precision (see `at_precision`).
class Polytope {
 public:
  using Generator = std::function<Polytope(unsigned digits)>;

  Polytope(int dim, std::string name, std::vector<Point> vertices, std::vector<Halfspace> halfspaces,
           unsigned digits);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  unsigned precision_digits() const { return digits_; }

  Point centroid() const;

  /// Regenerates the body at `digits` when the generator is known, otherwise
  /// rounds the stored coordinates (no digits are invented).
  Polytope at_precision(unsigned digits) const;
  bool regenerable() const { return generator_ != nullptr; }
  Polytope with_generator(Generator gen) const;

  // Double views for the numerical solver.
  Eigen::MatrixXd vertex_matrix() const;    // n x dim
  Eigen::MatrixXd normal_matrix() const;    // m x dim
  Eigen::VectorXd offset_vector() const;    // m

 private:
  int dim_;
  std::string name_;
  std::vector<Point> vertices_;
  std::vector<Halfspace> halfspaces_;
  unsigned digits_;
  std::shared_ptr<const Generator> generator_;
};

Polytope make_platonic(SolidKind kind, const Real& edge, unsigned digits = kDefaultDigits);
Polytope make_polygon(int n, const Real& edge, unsigned digits = kDefaultDigits);
Polytope make_solid(const SolidSpec& spec, const Real& edge, unsigned digits = kDefaultDigits);

/// Min over halfspaces of (b - a.centroid).
Real inradius(const Polytope& p);
/// Max vertex distance to the centroid.
Real circumradius(const Polytope& p);
/// Minimum pairwise vertex distance.
Real min_vertex_distance(const Polytope& p);

/// {y : y.x <= 1 for all x in P}. Throws std::domain_error unless the origin is
/// strictly interior.
Polytope polar_dual(const Polytope& p);

/// a.x <= b + tol for every halfspace. Throws std::invalid_argument on dimension
/// mismatch or missing H-representation.
bool contains(const Polytope& q, const Point& x, const Real& tol);

/// Largest value of a.x - b over all halfspaces (positive means outside).
Real max_violation(const Polytope& q, const Point& x);

/// Convex hull of a 2D or 3D point set, facets merged within 1e-25.
/// Throws std::invalid_argument on flat input.
Polytope hull_2d3d(const std::vector<Point>& points, unsigned digits = kDefaultDigits,
                   std::string name = "hull");

/// x -> scale * R x + t applied to both representations. R must be orthogonal.
Polytope transformed(const Polytope& p, const std::vector<Point>& rotation, const Point& translation,
                     const Real& scale = Real(1));

/// Reflection through the plane x_0 = 0.
Polytope mirrored(const Polytope& p);

/// Indices of vertices lying on each facet (|a.v - b| < tol), in cyclic order for
/// 2D/3D bodies.
std::vector<std::vector<int>> facet_vertex_indices(const Polytope& p, const Real& tol);

}  // namespace polyincl
