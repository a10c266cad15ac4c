#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "polyincl/refine.hpp"

using namespace polyincl;

namespace {

Polytope solid(const char* name) { return make_solid(parse_solid(name), Real(1)); }

struct Case {
  Polytope p, q;
  Placement seed;
};

Case solved(const char* p, const char* q) {
  Case c{solid(p), solid(q), {}};
  c.seed = solve_global(c.p, c.q, {}).best;
  return c;
}

std::vector<int> sorted_counts(const IncidenceSystem& sys) {
  auto v = sys.per_vertex_counts();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("scalar Newton doubles digits") {
  SystemFn fn = [](const RealVector& z, RealVector& f, RealMatrix* j) {
    f.resize(1);
    f(0) = z(0) * z(0) - 2;
    if (j) {
      j->resize(1, 1);
      (*j)(0, 0) = 2 * z(0);
    }
  };
  RealVector seed(1);
  seed(0) = Real("1.4");
  NewtonOptions opts;
  opts.seed_digits = 1;
  auto r = newton_solve(fn, seed, 100, opts);
  CHECK(r.iterations <= 9);
  PrecisionScope scope(130);
  CHECK(abs(r.z(0) - sqrt(Real(2))) < Real("1e-100"));
  CHECK(r.residual < Real("1e-100"));
}

TEST_CASE("Newton reports divergence and singular Jacobians") {
  SystemFn flat = [](const RealVector& z, RealVector& f, RealMatrix* j) {
    f.resize(1);
    f(0) = z(0) * z(0) + 1;  // no real root
    if (j) {
      j->resize(1, 1);
      (*j)(0, 0) = 2 * z(0);
    }
  };
  RealVector seed(1);
  seed(0) = Real(0);
  CHECK_THROWS_AS(newton_solve(flat, seed, 30), RefineError);
  seed(0) = Real("0.3");
  CHECK_THROWS_AS(newton_solve(flat, seed, 30), RefineError);
}

TEST_CASE("incidence detection examples") {
  auto tc = solved("T", "C");
  auto sys = detect_incidences(tc.seed, tc.p, tc.q);
  CHECK(sorted_counts(sys) == std::vector<int>{3, 3, 3, 3});

  auto di = solved("D", "I");
  auto counts = detect_incidences(di.seed, di.p, di.q).per_vertex_counts();
  CHECK(std::count(counts.begin(), counts.end(), 2) == 10);
  CHECK(std::count(counts.begin(), counts.end(), 1) == 10);

  // A small centered copy touches nothing.
  auto c = solid("C");
  Placement tiny = make_placement(c, c, Real("0.5"), Orientation::identity(3), Eigen::Vector3d::Zero(), false);
  CHECK_THROWS_AS(detect_incidences(tiny, c, c), IncidenceError);
  Placement big = make_placement(c, c, Real("1.5"), Orientation::identity(3), Eigen::Vector3d::Zero(), false);
  CHECK_THROWS_AS(detect_incidences(big, c, c), IncidenceError);
}

TEST_CASE("under-determined incidences are reported with counts") {
  auto c = solid("C");
  // Half-size cube in a corner: three facets touched, sigma left free.
  Placement pl = make_placement(c, c, Real("0.5"), Orientation::identity(3), Eigen::Vector3d(0.25, 0.25, 0.25), false);
  auto sys = detect_incidences(pl, c, c);
  CHECK(sys.incidences.size() == 12);
  try {
    build_square_system(sys, pl);
    FAIL("expected IncidenceError");
  } catch (const IncidenceError& e) {
    CHECK(e.found < 7);
    CHECK(e.needed == 7);
  }
}

TEST_CASE("concentric cube in cube converges immediately") {
  auto c = solid("C");
  Placement pl = make_placement(c, c, Real(1), Orientation::identity(3), Eigen::Vector3d::Zero(), false);
  auto sys = build_square_system(detect_incidences(pl, c, c), pl, Chart::Concentric);
  CHECK(sys.unknowns() == 5);
  auto sol = newton_refine(sys, pl, 60);
  CHECK(sol.placement.sigma == 1);
  CHECK(sol.convergence_log.size() == 1);
}

TEST_CASE("refined solutions are feasible, square and quadratically convergent") {
  for (auto [p, q] : {std::pair{"T", "I"}, {"D", "T"}, {"C", "I"}, {"O", "D"}}) {
    CAPTURE(p);
    CAPTURE(q);
    auto c = solved(p, q);
    auto sys = build_square_system(detect_incidences(c.seed, c.p, c.q), c.seed);
    CHECK(sys.square());
    CHECK(sys.rank == 8);
    auto sol = newton_refine(sys, c.seed, 120);
    CHECK(sol.residual < Real("1e-120"));
    CHECK(sol.full_residual < Real("1e-110"));
    CHECK(sol.feasibility < Real("1e-30"));
    CHECK(abs(sol.placement.sigma - c.seed.sigma) < Real("1e-9"));
    const auto& log = sol.convergence_log;
    REQUIRE(log.size() >= 3);
    // Exponent ratio of the last step, once inside the basin.
    const double ratio = log[log.size() - 1] / log[log.size() - 2];
    CHECK(ratio >= 1.8);
  }
}

TEST_CASE("two independent charts give the same solution") {
  auto c = solved("T", "I");
  auto base = build_square_system(detect_incidences(c.seed, c.p, c.q), c.seed);
  std::vector<Incidence> avoid;
  for (int idx : base.selected) avoid.push_back(base.incidences[static_cast<std::size_t>(idx)]);
  avoid.resize(2);
  auto alt = build_square_system(detect_incidences(c.seed, c.p, c.q), c.seed, Chart::Uniform, avoid);
  CHECK(alt.selected != base.selected);
  auto a = newton_refine(base, c.seed, 150);
  auto b = newton_refine(alt, c.seed, 150);
  PrecisionScope scope(200);
  CHECK(abs(a.placement.sigma - b.placement.sigma) < Real("1e-140"));
}

TEST_CASE("least-squares mode reaches the same point") {
  auto c = solved("D", "I");
  auto sys = build_square_system(detect_incidences(c.seed, c.p, c.q), c.seed);
  NewtonOptions opts;
  opts.least_squares = true;
  auto ls = newton_refine(sys, c.seed, 80, opts);
  auto sq = newton_refine(sys, c.seed, 80);
  CHECK(ls.least_squares);
  PrecisionScope scope(100);
  CHECK(abs(ls.placement.sigma - sq.placement.sigma) < Real("1e-75"));
  // (15 - sqrt 5) / 22
  CHECK(abs(sq.placement.sigma - (15 - sqrt(Real(5))) / 22) < Real("1e-75"));
}

TEST_CASE("planar refinement: triangle in square") {
  auto p = make_polygon(3, Real(1));
  auto q = make_polygon(4, Real(1));
  auto seed = solve_global(p, q, {}).best;
  auto sys = build_square_system(detect_incidences(seed, p, q), seed);
  CHECK(sys.unknowns() == 5);
  auto sol = newton_refine(sys, seed, 60);
  PrecisionScope scope(90);
  CHECK(abs(sol.placement.sigma - 1 / cos(pi(90) / 12)) < Real("1e-58"));
}

TEST_CASE("refinement is deterministic") {
  auto c = solved("O", "I");
  auto sys = build_square_system(detect_incidences(c.seed, c.p, c.q), c.seed);
  auto a = solution_to_json(newton_refine(sys, c.seed, 80), sys).dump();
  auto b = solution_to_json(newton_refine(sys, c.seed, 80), sys).dump();
  CHECK(a == b);
}
