#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyincl/containment.hpp"
#include "polyincl/geometry.hpp"

namespace polyincl {

/// The containment problem as a quadratically constrained maximization:
///
///   maximize s
///   subject to  a_k . v_i <= b_k                       (vertex i in halfspace k)
///               |v_i - v_j|^2 = s |w_i - w_j|^2        (similarity)
///
/// where w_i are P's vertices and v_i their placed images. In the reduced form
/// only the p+1 affine-basis points u_b are unknowns and every vertex is the
/// fixed affine combination v_i = sum_b lambda_ib u_b.
enum class QcpForm { Basic, Reduced };

enum class Relation { LessEqual, Equal };

struct QcpVariable {
  std::string name;  // "s", "v<i>_<j>" (basic) or "u<b>_<j>" (reduced)
  Real lower;
  Real upper;
};

/// coeffs . x (relation) rhs, dense over all variables.
struct LinearConstraint {
  std::vector<Real> coeffs;
  Real rhs;
  Relation relation = Relation::LessEqual;
  std::string label;
};

/// |x_i - x_j|^2 - s * target = 0 over the point slots i < j (vertices in the
/// basic form, basis points in the reduced form).
struct QuadraticConstraint {
  int i = 0;
  int j = 0;
  Real target;
};

struct QcpInstance {
  QcpForm form = QcpForm::Basic;
  std::string p_label;
  std::string q_label;
  int p_dim = 0;
  int q_dim = 0;
  int n = 0;  // vertices of P
  int m = 0;  // halfspaces of Q
  std::vector<QcpVariable> variables;  // variables[0] is s
  std::vector<LinearConstraint> linear;
  std::vector<QuadraticConstraint> quadratic;
  Real s_lower;
  std::vector<int> basis;                   // reduced: P vertex index of each basis point
  std::vector<std::vector<Real>> affine;    // reduced: n x (p+1) affine coefficients
  std::vector<std::string> symmetry_notes;  // e.g. "concentric", "pinned v0 f2"

  std::size_t variable_count() const { return variables.size(); }
  std::size_t inequality_count() const;
  std::size_t equality_count() const;
  /// Number of point slots holding q coordinates each (n or p+1).
  int point_count() const { return form == QcpForm::Basic ? n : p_dim + 1; }
  /// Index of coordinate j of point slot i in the variable vector.
  int var_index(int point, int coord) const { return 1 + point * q_dim + coord; }
};

/// Basic form: 1 + n q variables, n m inequalities, C(n, 2) quadratic equalities.
/// Throws std::invalid_argument when dim P > dim Q or a representation is empty.
QcpInstance build_basic(const Polytope& p, const Polytope& q);

/// Reduced form: (p+1) q + 1 variables, n m inequalities, C(p+1, 2) quadratic
/// equalities. The basis is chosen by greedy simplex-volume maximization unless
/// given explicitly. Throws std::invalid_argument on an affinely degenerate basis.
QcpInstance build_reduced(const Polytope& p, const Polytope& q, const std::vector<int>& basis = {});

/// Greedy affine basis: the vertex farthest from the centroid, then repeatedly
/// the vertex maximizing the volume of the simplex spanned so far.
std::vector<int> greedy_affine_basis(const Polytope& p);

/// Squared dilation placing P's circumsphere inside Q's insphere, both centered
/// at the vertex centroids: (inradius Q / circumradius P)^2.
Real keplerian_bound(const Polytope& p, const Polytope& q);

/// Point reflection through the vertex centroid maps the vertex set to itself.
bool centrally_symmetric(const Polytope& p, const Real& tol = Real("1e-20"));

/// Concentric adds q equalities fixing the mean of the placed vertices at Q's
/// vertex centroid; VertexPinned turns the inequality (pinned_vertex,
/// pinned_facet) into an equality. Throws std::invalid_argument when the mode
/// does not apply (concentric needs centrally symmetric P and Q, pins must be
/// in range).
QcpInstance apply_symmetry(const QcpInstance& inst, const Polytope& p, const Polytope& q,
                           const SymmetryConstraint& sym);

/// Reduced point -> basic point with the same s (v_i = sum_b lambda_ib u_b).
std::vector<Real> expand_point(const QcpInstance& reduced, const std::vector<Real>& x);
/// Basic point -> reduced point (u_b = v_{basis_b}).
std::vector<Real> restrict_point(const QcpInstance& reduced, const std::vector<Real>& x);
/// Variable vector of a placement: s followed by the point coordinates.
std::vector<Real> point_from_vertices(const QcpInstance& inst, const Real& s, const std::vector<Point>& vertices);

struct QcpFeasibility {
  Real linear_violation;     // max over rows of (lhs - rhs), |lhs - rhs| for equalities
  Real quadratic_residual;   // max |x_i - x_j|^2 - s target|
  Real bound_violation;      // max distance outside a variable interval
  bool feasible = false;     // all three <= tol
};

QcpFeasibility check_point(const QcpInstance& inst, const std::vector<Real>& x, const Real& tol);

/// Documented JSON form; numbers as decimal strings with `digits` digits.
nlohmann::json qcp_to_json(const QcpInstance& inst, unsigned digits = 30);
/// Inverse of qcp_to_json at the given working precision.
QcpInstance qcp_from_json(const nlohmann::json& j, unsigned digits = kDefaultDigits);

}  // namespace polyincl
