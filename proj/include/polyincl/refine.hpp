#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include "json.hpp"
#include "polyincl/geometry.hpp"
#include "polyincl/solver.hpp"

namespace polyincl {

using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// ---------------------------------------------------------------------------
// Generic Newton driver with a precision ladder.

/// Evaluates F(z) and, when `jac` is non-null, its Jacobian, at the current
/// working precision.
using SystemFn = std::function<void(const RealVector& z, RealVector& f, RealMatrix* jac)>;

struct NewtonOptions {
  unsigned seed_digits = 15;  // correct digits assumed in the seed
  unsigned guard_digits = 20;
  int max_iterations = 60;
  bool least_squares = false; // minimum-norm Gauss-Newton steps instead of a square solve
};

struct NewtonResult {
  RealVector z;
  unsigned digits = 0;          // verified: residual and last step below 10^-digits
  Real residual;                // max |F_j| at z
  std::vector<double> log10_residual;  // one entry per iterate, the seed first
  std::vector<unsigned> working_digits;
  int iterations = 0;
};

class RefineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton's method from `seed` to a residual below 10^-target_digits. The
/// working precision starts at twice the seed digits and doubles with the
/// correct digits, plus guard digits. Throws RefineError on divergence, a
/// singular Jacobian or an exhausted iteration budget.
NewtonResult newton_solve(const SystemFn& fn, const RealVector& seed, unsigned target_digits,
                          const NewtonOptions& opts = {});

// ---------------------------------------------------------------------------
// Incidence systems.

struct Incidence {
  int vertex = 0;
  int facet = 0;
  bool operator==(const Incidence&) const = default;
};

enum class Chart { Uniform, Concentric };

/// Polynomial system a_k . (sigma R(q) (w_i - c_P) + t) = b_k over the listed
/// incidences plus |q|^2 = 1. Unknowns (sigma, q, t) in the uniform chart,
/// (sigma, q) with t pinned to Q's center in the concentric chart; in the plane
/// q is the pair (cos, sin).
struct IncidenceSystem {
  Polytope p;
  Polytope q;
  bool reflected = false;
  Chart chart = Chart::Uniform;
  std::vector<Incidence> incidences;  // every detected pair
  std::vector<int> selected;          // indices into `incidences` forming the square system
  int rank = 0;                       // Jacobian rank of the full system at the seed
  std::string chart_note;
  Real detection_tol;

  int dim() const { return q.dim(); }
  int unknowns() const;
  /// Incidence equations needed beyond the norm equation.
  int required() const { return unknowns() - 1; }
  bool square() const { return static_cast<int>(selected.size()) == required(); }
  std::vector<int> per_vertex_counts() const;
};

class IncidenceError : public std::runtime_error {
 public:
  IncidenceError(const std::string& what, int found, int needed)
      : std::runtime_error(what), found(found), needed(needed) {}
  int found;
  int needed;
};

/// All (i, k) with |a_k . v_i - b_k| < tol. Throws IncidenceError when the
/// placement is infeasible beyond tol or when no incidence is found.
IncidenceSystem detect_incidences(const Placement& placement, const Polytope& p, const Polytope& q,
                                  double tol = 1e-6);

/// Selects an independent subset by greedy row pivoting of the Jacobian at
/// the seed (rank threshold 1e-8). Incidences in `avoid` are taken only when
/// no other row adds rank, which yields alternative charts of the same
/// solution. Throws IncidenceError when the Jacobian is rank-deficient.
IncidenceSystem build_square_system(IncidenceSystem sys, const Placement& seed, Chart chart = Chart::Uniform,
                                    const std::vector<Incidence>& avoid = {});

/// Seed vector (sigma, q, t) of a placement in the system's chart.
RealVector seed_vector(const IncidenceSystem& sys, const Placement& seed);

/// Residuals and Jacobian of the selected rows (or all rows when `all`).
SystemFn incidence_function(const IncidenceSystem& sys, bool all_rows);

struct HighPrecisionSolution {
  Placement placement;
  std::vector<std::string> values;    // unknowns as decimal strings
  unsigned digits = 0;
  Real residual;                      // square system
  Real full_residual;                 // all detected incidences
  Real feasibility;                   // max containment violation
  std::vector<double> convergence_log;
  bool least_squares = false;
};

/// Refines the seed to `target_digits`. Uses the square system when
/// `sys.square()`, otherwise minimum-norm Gauss-Newton on all incidences.
/// Throws RefineError when the full incidence residual or feasibility check fails.
HighPrecisionSolution newton_refine(const IncidenceSystem& sys, const Placement& seed, unsigned target_digits,
                                    const NewtonOptions& opts = {});

nlohmann::json solution_to_json(const HighPrecisionSolution& sol, const IncidenceSystem& sys);

}  // namespace polyincl
