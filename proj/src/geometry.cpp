#include "polyincl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyincl {

std::string SolidSpec::label() const {
  switch (kind) {
    case SolidKind::Tetrahedron: return "T";
    case SolidKind::Cube: return "C";
    case SolidKind::Octahedron: return "O";
    case SolidKind::Dodecahedron: return "D";
    case SolidKind::Icosahedron: return "I";
    case SolidKind::Polygon: return "ngon:" + std::to_string(sides);
  }
  return "?";
}

bool SolidSpec::centrally_symmetric() const {
  if (kind == SolidKind::Tetrahedron) return false;
  if (kind == SolidKind::Polygon) return sides % 2 == 0;
  return true;
}

SolidSpec parse_solid(const std::string& text) {
  if (text == "T") return {SolidKind::Tetrahedron, 0};
  if (text == "C") return {SolidKind::Cube, 0};
  if (text == "O") return {SolidKind::Octahedron, 0};
  if (text == "D") return {SolidKind::Dodecahedron, 0};
  if (text == "I") return {SolidKind::Icosahedron, 0};
  if (text.rfind("ngon:", 0) == 0) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(text.substr(5), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad polygon spec: " + text);
    }
    if (used != text.size() - 5 || n < 3) throw std::invalid_argument("bad polygon spec: " + text);
    return {SolidKind::Polygon, n};
  }
  throw std::invalid_argument("unknown solid: " + text);
}

namespace {

Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Point round_point(const Point& p, unsigned digits) {
  Point r;
  r.reserve(p.size());
  for (const auto& x : p) r.push_back(polyincl::at_precision(x, digits));
  return r;
}

int affine_rank(const std::vector<Point>& pts, int dim) {
  if (pts.empty()) return -1;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), dim);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (int j = 0; j < dim; ++j)
      m(static_cast<Eigen::Index>(i), j) = (pts[i][j] - pts[0][j]).convert_to<double>();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  return static_cast<int>(lu.rank());
}

/// Vertices plus outward facet directions; offsets are the support values.
Polytope with_support_offsets(int dim, std::string name, std::vector<Point> vertices,
                              const std::vector<Point>& directions, unsigned digits) {
  std::vector<Halfspace> hs;
  hs.reserve(directions.size());
  for (const auto& d : directions) {
    Real len = norm(d);
    Point a = (Real(1) / len) * d;
    Real b = dot(a, vertices.front());
    for (const auto& v : vertices) b = max(b, dot(a, v));
    hs.push_back({std::move(a), b});
  }
  return Polytope(dim, std::move(name), std::move(vertices), std::move(hs), digits);
}

// The three cyclic permutations of (x, y, z).
void push_cyclic(std::vector<Point>& out, const Real& x, const Real& y, const Real& z) {
  out.push_back({x, y, z});
  out.push_back({y, z, x});
  out.push_back({z, x, y});
}

// Cyclic permutations of (0, +-1, +-phi); `swapped` gives (0, +-phi, +-1), the
// facet directions of the dodecahedron below.
std::vector<Point> icosahedron_directions(const Real& phi, bool swapped) {
  std::vector<Point> out;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      if (swapped)
        push_cyclic(out, Real(0), s1 * phi, Real(s2));
      else
        push_cyclic(out, Real(0), Real(s1), s2 * phi);
    }
  return out;
}

// (+-1, +-1, +-1) and cyclic permutations of (0, +-1/phi, +-phi); `swapped`
// exchanges the last two slots, giving the icosahedron's facet directions.
std::vector<Point> dodecahedron_directions(const Real& phi, bool swapped) {
  std::vector<Point> out;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1}) out.push_back({Real(s1), Real(s2), Real(s3)});
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      if (swapped)
        push_cyclic(out, Real(0), s1 * phi, s2 / phi);
      else
        push_cyclic(out, Real(0), s1 / phi, s2 * phi);
    }
  return out;
}

}  // namespace

Polytope::Polytope(int dim, std::string name, std::vector<Point> vertices, std::vector<Halfspace> halfspaces,
                   unsigned digits)
    : dim_(dim), name_(std::move(name)), digits_(digits) {
  if (dim < 1) throw std::invalid_argument("polytope dimension must be positive");
  if (vertices.empty() && halfspaces.empty()) throw std::invalid_argument("empty representation");
  PrecisionScope scope(digits);
  for (auto& v : vertices) {
    if (static_cast<int>(v.size()) != dim) throw std::invalid_argument("vertex dimension mismatch");
    vertices_.push_back(round_point(v, digits));
  }
  for (auto& h : halfspaces) {
    if (static_cast<int>(h.normal.size()) != dim) throw std::invalid_argument("halfspace dimension mismatch");
    Real len = norm(h.normal);
    if (len == 0) throw std::invalid_argument("halfspace with zero normal");
    Point a = round_point((Real(1) / len) * h.normal, digits);
    halfspaces_.push_back({std::move(a), polyincl::at_precision(h.offset / len, digits)});
  }
  if (!vertices_.empty() && affine_rank(vertices_, dim) < dim)
    throw std::invalid_argument("vertices do not span the ambient space");
}

Point Polytope::centroid() const {
  if (vertices_.empty()) throw std::logic_error("centroid needs a V-representation");
  Point c(static_cast<std::size_t>(dim_), Real(0, digits_));
  for (const auto& v : vertices_)
    for (int j = 0; j < dim_; ++j) c[j] += v[j];
  for (auto& x : c) x /= static_cast<long>(vertices_.size());
  return c;
}

Polytope Polytope::at_precision(unsigned digits) const {
  if (generator_) return (*generator_)(digits);
  std::vector<Point> vs;
  for (const auto& v : vertices_) vs.push_back(round_point(v, digits));
  std::vector<Halfspace> hs;
  for (const auto& h : halfspaces_) hs.push_back({round_point(h.normal, digits), polyincl::at_precision(h.offset, digits)});
  return Polytope(dim_, name_, std::move(vs), std::move(hs), std::min(digits, digits_));
}

Polytope Polytope::with_generator(Generator gen) const {
  Polytope copy = *this;
  copy.generator_ = std::make_shared<const Generator>(std::move(gen));
  return copy;
}

Eigen::MatrixXd Polytope::vertex_matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vertices_.size()), dim_);
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (int j = 0; j < dim_; ++j) m(static_cast<Eigen::Index>(i), j) = vertices_[i][j].convert_to<double>();
  return m;
}

Eigen::MatrixXd Polytope::normal_matrix() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(halfspaces_.size()), dim_);
  for (std::size_t i = 0; i < halfspaces_.size(); ++i)
    for (int j = 0; j < dim_; ++j)
      m(static_cast<Eigen::Index>(i), j) = halfspaces_[i].normal[j].convert_to<double>();
  return m;
}

Eigen::VectorXd Polytope::offset_vector() const {
  Eigen::VectorXd b(static_cast<Eigen::Index>(halfspaces_.size()));
  for (std::size_t i = 0; i < halfspaces_.size(); ++i)
    b(static_cast<Eigen::Index>(i)) = halfspaces_[i].offset.convert_to<double>();
  return b;
}

Polytope make_platonic(SolidKind kind, const Real& edge, unsigned digits) {
  if (kind == SolidKind::Polygon) throw std::invalid_argument("make_platonic: use make_polygon for polygons");
  if (edge <= 0) throw std::invalid_argument("edge length must be positive");
  Polytope::Generator regen = [kind, edge](unsigned d) { return make_platonic(kind, edge, d); };
  PrecisionScope scope(digits + 10);
  const Real e = polyincl::at_precision(edge, digits + 10);
  const Real phi = golden_ratio(digits + 10);
  std::vector<Point> verts;
  std::vector<Point> dirs;
  std::string name;
  switch (kind) {
    case SolidKind::Tetrahedron: {
      name = "T";
      Real s = e / (2 * sqrt(Real(2)));
      for (auto [x, y, z] : {std::array{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}})
        verts.push_back({s * x, s * y, s * z});
      for (const auto& v : verts) dirs.push_back(Real(-1) * v);
      break;
    }
    case SolidKind::Cube: {
      name = "C";
      Real h = e / 2;
      for (int sx : {1, -1})
        for (int sy : {1, -1})
          for (int sz : {1, -1}) verts.push_back({sx * h, sy * h, sz * h});
      for (int j = 0; j < 3; ++j)
        for (int s : {1, -1}) {
          Point d(3, Real(0));
          d[j] = s;
          dirs.push_back(d);
        }
      break;
    }
    case SolidKind::Octahedron: {
      name = "O";
      Real r = e / sqrt(Real(2));
      for (int j = 0; j < 3; ++j)
        for (int s : {1, -1}) {
          Point v(3, Real(0));
          v[j] = s * r;
          verts.push_back(v);
        }
      for (int sx : {1, -1})
        for (int sy : {1, -1})
          for (int sz : {1, -1}) dirs.push_back({Real(sx), Real(sy), Real(sz)});
      break;
    }
    case SolidKind::Dodecahedron: {
      name = "D";
      Real s = e * phi / 2;  // base coordinates have edge 2/phi
      for (auto& v : dodecahedron_directions(phi, false)) verts.push_back(s * v);
      dirs = icosahedron_directions(phi, true);
      break;
    }
    case SolidKind::Icosahedron: {
      name = "I";
      Real s = e / 2;  // base coordinates have edge 2
      for (auto& v : icosahedron_directions(phi, false)) verts.push_back(s * v);
      dirs = dodecahedron_directions(phi, true);
      break;
    }
    case SolidKind::Polygon: break;
  }
  return with_support_offsets(3, name, std::move(verts), dirs, digits).with_generator(regen);
}

Polytope make_polygon(int n, const Real& edge, unsigned digits) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 sides");
  if (edge <= 0) throw std::invalid_argument("edge length must be positive");
  Polytope::Generator regen = [n, edge](unsigned d) { return make_polygon(n, edge, d); };
  PrecisionScope scope(digits + 10);
  const Real e = polyincl::at_precision(edge, digits + 10);
  const Real p = pi(digits + 10);
  const Real radius = e / (2 * sin(p / n));
  std::vector<Point> verts;
  std::vector<Point> dirs;
  for (int k = 0; k < n; ++k) {
    Real a = 2 * p * k / n;
    verts.push_back({radius * cos(a), radius * sin(a)});
    Real b = p * (2 * k + 1) / n;
    dirs.push_back({cos(b), sin(b)});
  }
  // Exact zero for the vertex on the positive x-axis.
  verts[0][1] = 0;
  return with_support_offsets(2, "ngon:" + std::to_string(n), std::move(verts), dirs, digits).with_generator(regen);
}

Polytope make_solid(const SolidSpec& spec, const Real& edge, unsigned digits) {
  if (spec.kind == SolidKind::Polygon) return make_polygon(spec.sides, edge, digits);
  return make_platonic(spec.kind, edge, digits);
}

Real inradius(const Polytope& p) {
  if (p.halfspaces().empty() || p.vertices().empty()) throw std::invalid_argument("inradius needs both representations");
  PrecisionScope scope(p.precision_digits());
  Point c = p.centroid();
  Real best = p.halfspaces().front().offset - dot(p.halfspaces().front().normal, c);
  for (const auto& h : p.halfspaces()) best = min(best, h.offset - dot(h.normal, c));
  return best;
}

Real circumradius(const Polytope& p) {
  if (p.vertices().empty()) throw std::invalid_argument("circumradius needs a V-representation");
  PrecisionScope scope(p.precision_digits());
  Point c = p.centroid();
  Real best = 0;
  for (const auto& v : p.vertices()) best = max(best, norm(v - c));
  return best;
}

Real min_vertex_distance(const Polytope& p) {
  const auto& vs = p.vertices();
  if (vs.size() < 2) throw std::invalid_argument("need two vertices");
  PrecisionScope scope(p.precision_digits());
  Real best = norm(vs[0] - vs[1]);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) best = min(best, norm(vs[i] - vs[j]));
  return best;
}

Polytope polar_dual(const Polytope& p) {
  if (p.halfspaces().empty() || p.vertices().empty()) throw std::invalid_argument("polar_dual needs both representations");
  PrecisionScope scope(p.precision_digits());
  const Real eps = pow(Real(10), -static_cast<int>(p.precision_digits()) + 10);
  std::vector<Point> verts;
  for (const auto& h : p.halfspaces()) {
    if (h.offset <= eps) throw std::domain_error("origin is not strictly interior");
    verts.push_back((Real(1) / h.offset) * h.normal);
  }
  std::vector<Halfspace> hs;
  for (const auto& v : p.vertices()) {
    Real len = norm(v);
    hs.push_back({(Real(1) / len) * v, Real(1) / len});
  }
  Polytope dual(p.dim(), p.name() + "*", std::move(verts), std::move(hs), p.precision_digits());
  if (p.regenerable()) {
    Polytope src = p;
    return dual.with_generator([src](unsigned d) { return polar_dual(src.at_precision(d)); });
  }
  return dual;
}

bool contains(const Polytope& q, const Point& x, const Real& tol) {
  return max_violation(q, x) <= tol;
}

Real max_violation(const Polytope& q, const Point& x) {
  if (q.halfspaces().empty()) throw std::invalid_argument("containment needs an H-representation");
  if (static_cast<int>(x.size()) != q.dim()) throw std::invalid_argument("point dimension mismatch");
  Real worst = dot(q.halfspaces().front().normal, x) - q.halfspaces().front().offset;
  for (const auto& h : q.halfspaces()) worst = max(worst, dot(h.normal, x) - h.offset);
  return worst;
}

Polytope hull_2d3d(const std::vector<Point>& points, unsigned digits, std::string name) {
  if (points.empty()) throw std::invalid_argument("hull of empty set");
  const int dim = static_cast<int>(points.front().size());
  if (dim != 2 && dim != 3) throw std::invalid_argument("hull_2d3d supports dimensions 2 and 3");
  PrecisionScope scope(digits);
  const Real merge_tol = Real("1e-25");

  std::vector<Point> pts;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("mixed point dimensions");
    bool dup = std::any_of(pts.begin(), pts.end(), [&](const Point& q) { return norm(p - q) < merge_tol; });
    if (!dup) pts.push_back(round_point(p, digits));
  }
  if (affine_rank(pts, dim) < dim) throw std::invalid_argument("degenerate (flat) point set");

  Real scale = 0;
  for (const auto& p : pts) scale = max(scale, norm(p - pts.front()));
  const Real side_tol = merge_tol * max(scale, Real(1));

  std::vector<Halfspace> facets;
  auto try_plane = [&](Point n, const Point& anchor) {
    Real len = norm(n);
    if (len <= side_tol) return;
    n = (Real(1) / len) * n;
    Real b = dot(n, anchor);
    bool below = true;
    bool above = true;
    for (const auto& p : pts) {
      Real s = dot(n, p) - b;
      if (s > side_tol) below = false;
      if (s < -side_tol) above = false;
    }
    if (!below && !above) return;
    if (!below) {
      n = Real(-1) * n;
      b = -b;
    }
    for (const auto& f : facets)
      if (norm(f.normal - n) < merge_tol) return;
    facets.push_back({std::move(n), std::move(b)});
  };

  const std::size_t n = pts.size();
  if (dim == 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Point d = pts[j] - pts[i];
        try_plane({-d[1], d[0]}, pts[i]);
      }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) try_plane(cross(pts[j] - pts[i], pts[k] - pts[i]), pts[i]);
  }

  // Extreme points lie on `dim` facets with independent normals.
  std::vector<Point> verts;
  for (const auto& p : pts) {
    std::vector<Point> on;
    for (const auto& f : facets)
      if (abs(dot(f.normal, p) - f.offset) <= side_tol) on.push_back(f.normal);
    if (static_cast<int>(on.size()) < dim) continue;
    std::vector<Point> with_origin{Point(static_cast<std::size_t>(dim), Real(0))};
    with_origin.insert(with_origin.end(), on.begin(), on.end());
    if (affine_rank(with_origin, dim) == dim) verts.push_back(p);
  }
  return Polytope(dim, std::move(name), std::move(verts), std::move(facets), digits);
}

Polytope transformed(const Polytope& p, const std::vector<Point>& rotation, const Point& translation,
                     const Real& scale) {
  const int dim = p.dim();
  if (static_cast<int>(rotation.size()) != dim || static_cast<int>(translation.size()) != dim)
    throw std::invalid_argument("transform dimension mismatch");
  PrecisionScope scope(p.precision_digits());
  auto apply = [&](const Point& x) {
    Point y(static_cast<std::size_t>(dim), Real(0));
    for (int r = 0; r < dim; ++r) y[r] = dot(rotation[r], x);
    return y;
  };
  std::vector<Point> verts;
  for (const auto& v : p.vertices()) verts.push_back(scale * apply(v) + translation);
  std::vector<Halfspace> hs;
  for (const auto& h : p.halfspaces()) {
    Point a = apply(h.normal);
    Real b = scale * h.offset + dot(a, translation);
    hs.push_back({std::move(a), std::move(b)});
  }
  return Polytope(dim, p.name(), std::move(verts), std::move(hs), p.precision_digits());
}

Polytope mirrored(const Polytope& p) {
  std::vector<Point> verts = p.vertices();
  for (auto& v : verts) v[0] = -v[0];
  std::vector<Halfspace> hs = p.halfspaces();
  for (auto& h : hs) h.normal[0] = -h.normal[0];
  Polytope out(p.dim(), p.name() + "~", std::move(verts), std::move(hs), p.precision_digits());
  if (p.regenerable()) {
    Polytope src = p;
    return out.with_generator([src](unsigned d) { return mirrored(src.at_precision(d)); });
  }
  return out;
}

std::vector<std::vector<int>> facet_vertex_indices(const Polytope& p, const Real& tol) {
  std::vector<std::vector<int>> out;
  const auto& vs = p.vertices();
  for (const auto& h : p.halfspaces()) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (abs(dot(h.normal, vs[i]) - h.offset) < tol) idx.push_back(static_cast<int>(i));
    if (p.dim() == 3 && idx.size() >= 3) {
      // Order counter-clockwise seen from outside.
      Eigen::Vector3d n(h.normal[0].convert_to<double>(), h.normal[1].convert_to<double>(),
                        h.normal[2].convert_to<double>());
      Eigen::Vector3d c = Eigen::Vector3d::Zero();
      std::vector<Eigen::Vector3d> pts;
      for (int i : idx) {
        Eigen::Vector3d v(vs[i][0].convert_to<double>(), vs[i][1].convert_to<double>(), vs[i][2].convert_to<double>());
        pts.push_back(v);
        c += v;
      }
      c /= static_cast<double>(pts.size());
      Eigen::Vector3d u = (pts[0] - c).normalized();
      Eigen::Vector3d w = n.cross(u);
      std::vector<std::pair<double, int>> keyed;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        Eigen::Vector3d d = pts[k] - c;
        keyed.emplace_back(std::atan2(d.dot(w), d.dot(u)), idx[k]);
      }
      std::sort(keyed.begin(), keyed.end());
      for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = keyed[k].second;
    }
    out.push_back(std::move(idx));
  }
  return out;
}

}  // namespace polyincl
