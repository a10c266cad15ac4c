#include "doctest.h"

#include <algorithm>

#include "polyincl/geometry.hpp"
#include "polyincl/geometry_io.hpp"

using namespace polyincl;

namespace {

const Real kTight("1e-30");

const std::vector<SolidKind> kSolids = {SolidKind::Tetrahedron, SolidKind::Cube, SolidKind::Octahedron,
                                        SolidKind::Dodecahedron, SolidKind::Icosahedron};

bool same_point_set(const std::vector<Point>& a, const std::vector<Point>& b, const Real& tol) {
  if (a.size() != b.size()) return false;
  for (const auto& p : a) {
    bool found = std::any_of(b.begin(), b.end(), [&](const Point& q) { return norm(p - q) < tol; });
    if (!found) return false;
  }
  return true;
}

std::vector<Point> normals(const Polytope& p) {
  std::vector<Point> out;
  for (const auto& h : p.halfspaces()) out.push_back(h.normal);
  return out;
}

}  // namespace

TEST_CASE("cube with unit edge") {
  auto c = make_platonic(SolidKind::Cube, Real(1));
  CHECK(c.vertices().size() == 8);
  CHECK(c.halfspaces().size() == 6);
  for (const auto& v : c.vertices())
    for (const auto& x : v) CHECK(abs(abs(x) - Real("0.5")) < kTight);
  for (const auto& h : c.halfspaces()) CHECK(abs(h.offset - Real("0.5")) < kTight);
  CHECK(abs(inradius(c) - Real("0.5")) < kTight);
  CHECK(abs(circumradius(c) - sqrt(Real(3)) / 2) < kTight);
}

TEST_CASE("tetrahedron with edge sqrt2 is a demicube") {
  auto t = make_platonic(SolidKind::Tetrahedron, sqrt(Real(2)));
  REQUIRE(t.vertices().size() == 4);
  for (const auto& v : t.vertices()) {
    int minus = 0;
    for (const auto& x : v) {
      CHECK(abs(abs(x) - Real("0.5")) < kTight);
      if (x < 0) ++minus;
    }
    CHECK(minus % 2 == 0);
  }
  auto t1 = make_platonic(SolidKind::Tetrahedron, Real(1));
  CHECK(abs(circumradius(t1) - sqrt(Real(6)) / 4) < kTight);
  CHECK(abs(inradius(t1) / circumradius(t1) - Real(1) / 3) < kTight);
}

TEST_CASE("dodecahedron circumradius against brute-force edge") {
  auto d = make_platonic(SolidKind::Dodecahedron, Real(1));
  CHECK(d.vertices().size() == 20);
  CHECK(d.halfspaces().size() == 12);
  CHECK(abs(min_vertex_distance(d) - 1) < kTight);
  Real expected = sqrt(Real(3)) / 2 * golden_ratio(60);
  CHECK(abs(circumradius(d) - expected) < kTight);
  CHECK(abs(circumradius(d) - Real("1.40125854")) < Real("1e-8"));
  // six edges parallel to the coordinate axes
  int axis_edges = 0;
  const auto& vs = d.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Point e = vs[i] - vs[j];
      if (abs(norm(e) - 1) > kTight) continue;
      int nonzero = 0;
      for (const auto& x : e) nonzero += abs(x) > kTight;
      axis_edges += nonzero == 1;
    }
  CHECK(axis_edges == 6);
}

TEST_CASE("octahedron radii") {
  auto o = make_platonic(SolidKind::Octahedron, Real(1));
  CHECK(abs(circumradius(o) - sqrt(Real(2)) / 2) < kTight);
}

TEST_CASE("regular polygons") {
  auto sq = make_polygon(4, Real(1));
  CHECK(abs(circumradius(sq) - sqrt(Real(2)) / 2) < kTight);
  auto tri = make_polygon(3, Real(1));
  CHECK(abs(circumradius(tri) - Real(1) / sqrt(Real(3))) < kTight);
  CHECK(abs(circumradius(tri) - Real("0.57735027")) < Real("1e-8"));
  auto hex = make_polygon(6, Real(1));
  Real apothem = Real(1) / (2 * tan(pi(60) / 6));
  CHECK(abs(inradius(hex) - apothem) < kTight);
  CHECK(abs(inradius(hex) - sqrt(Real(3)) / 2) < kTight);
  // cross-check: distance from origin to the hull's edges
  auto h = hull_2d3d(hex.vertices());
  REQUIRE(h.halfspaces().size() == 6);
  for (const auto& f : h.halfspaces()) CHECK(abs(f.offset - apothem) < kTight);
  CHECK(abs(sq.vertices()[0][1]) == 0);
  CHECK(sq.vertices()[0][0] > 0);
}

TEST_CASE("generator errors") {
  CHECK_THROWS_AS(make_platonic(SolidKind::Cube, Real(0)), std::invalid_argument);
  CHECK_THROWS_AS(make_platonic(SolidKind::Icosahedron, Real(-1)), std::invalid_argument);
  CHECK_THROWS_AS(make_polygon(2, Real(1)), std::invalid_argument);
  CHECK_THROWS_AS(parse_solid("X"), std::invalid_argument);
  CHECK_THROWS_AS(parse_solid("ngon:2"), std::invalid_argument);
  CHECK(parse_solid("ngon:7").sides == 7);
}

TEST_CASE("representation consistency and edge length for all solids") {
  for (auto kind : kSolids) {
    auto p = make_platonic(kind, Real("1.3"));
    CAPTURE(p.name());
    CHECK(abs(min_vertex_distance(p) - Real("1.3")) < kTight);
    for (const auto& h : p.halfspaces()) {
      CHECK(abs(norm(h.normal) - 1) < kTight);
      std::vector<Point> on;
      for (const auto& v : p.vertices()) {
        Real slack = h.offset - dot(h.normal, v);
        CHECK(slack > -kTight);
        if (abs(slack) < kTight) on.push_back(v);
      }
      CHECK(on.size() >= 3);
    }
    CHECK(inradius(p) < circumradius(p));
  }
}

TEST_CASE("polar duality") {
  auto cube = make_platonic(SolidKind::Cube, Real(2));
  auto oct = polar_dual(cube);
  CHECK(oct.vertices().size() == 6);
  CHECK(abs(circumradius(oct) - 1) < kTight);

  for (auto kind : kSolids) {
    auto p = make_platonic(kind, Real("0.7"));
    auto back = polar_dual(polar_dual(p));
    CAPTURE(p.name());
    CHECK(same_point_set(p.vertices(), back.vertices(), kTight));
  }

  // concentric reciprocal cube/octahedron: edge product 2 sqrt 2
  auto c = make_platonic(SolidKind::Cube, Real(1));
  auto cd = polar_dual(c);
  CHECK(abs(min_vertex_distance(cd) * 1 - 2 * sqrt(Real(2))) < kTight);

  auto shifted = transformed(c, {{Real(1), Real(0), Real(0)}, {Real(0), Real(1), Real(0)}, {Real(0), Real(0), Real(1)}},
                             {Real(1), Real(0), Real(0)});
  CHECK_THROWS_AS(polar_dual(shifted), std::domain_error);
}

TEST_CASE("containment predicate") {
  auto c = make_platonic(SolidKind::Cube, Real(1));
  CHECK(contains(c, {Real(0), Real(0), Real(0)}, Real(0)));
  CHECK_FALSE(contains(c, {Real(1), Real(0), Real(0)}, Real("1e-9")));
  CHECK_THROWS_AS(contains(c, {Real(0), Real(0)}, Real(0)), std::invalid_argument);
  // tetrahedron of edge sqrt 2 sits on alternate cube corners
  auto t = make_platonic(SolidKind::Tetrahedron, sqrt(Real(2)));
  for (const auto& v : t.vertices()) CHECK(contains(c, v, kTight));
}

TEST_CASE("hull reproduces generator facets") {
  std::vector<Point> square = {{Real(0), Real(0)}, {Real(1), Real(0)}, {Real(1), Real(1)}, {Real(0), Real(1)}};
  CHECK(hull_2d3d(square).halfspaces().size() == 4);
  auto cube = make_platonic(SolidKind::Cube, Real(1));
  CHECK(hull_2d3d(cube.vertices()).halfspaces().size() == 6);
  auto d = make_platonic(SolidKind::Dodecahedron, Real(1));
  auto hd = hull_2d3d(d.vertices());
  CHECK(hd.halfspaces().size() == 12);
  for (const auto& f : facet_vertex_indices(hd, kTight)) CHECK(f.size() == 5);
  for (auto kind : kSolids) {
    auto p = make_platonic(kind, Real(1));
    auto h = hull_2d3d(p.vertices());
    CAPTURE(p.name());
    CHECK(same_point_set(normals(p), normals(h), kTight));
    CHECK(same_point_set(p.vertices(), h.vertices(), kTight));
  }
  // interior points are not reported as vertices
  auto pts = cube.vertices();
  pts.push_back({Real(0), Real(0), Real("0.5")});
  CHECK(hull_2d3d(pts).vertices().size() == 8);
  std::vector<Point> flat = {{Real(0), Real(0), Real(0)}, {Real(1), Real(0), Real(0)}, {Real(0), Real(1), Real(0)},
                             {Real(1), Real(1), Real(0)}};
  CHECK_THROWS_AS(hull_2d3d(flat), std::invalid_argument);
}

TEST_CASE("regeneration at higher precision") {
  auto d = make_platonic(SolidKind::Dodecahedron, Real(1), 50);
  auto d300 = d.at_precision(300);
  CHECK(d300.precision_digits() == 300);
  CHECK(abs(min_vertex_distance(d300) - 1) < Real("1e-290"));
  auto dual = polar_dual(d).at_precision(200);
  CHECK(dual.precision_digits() == 200);
}

TEST_CASE("JSON and OFF export") {
  auto d = make_platonic(SolidKind::Dodecahedron, Real(1));
  auto j = polytope_to_json(d);
  CHECK(j["dim"] == 3);
  CHECK(j["vertices"].size() == 20);
  auto back = polytope_from_json(j);
  CHECK(same_point_set(d.vertices(), back.vertices(), Real("1e-45")));
  CHECK(same_point_set(normals(d), normals(back), Real("1e-45")));
  CHECK_THROWS_AS(polytope_from_json(nlohmann::json{{"name", "x"}}), std::invalid_argument);

  std::string off = polytope_to_off(d);
  CHECK(off.rfind("OFF\n20 12 0\n", 0) == 0);
  CHECK(polytope_to_off(d) == off);
}
