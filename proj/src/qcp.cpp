#include "polyincl/qcp.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

namespace polyincl {

namespace {

using RealMat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RealVec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

unsigned working_digits(const Polytope& p, const Polytope& q) {
  return std::max(p.precision_digits(), q.precision_digits());
}

void check_pair(const Polytope& p, const Polytope& q) {
  if (p.dim() > q.dim()) throw std::invalid_argument("qcp: dim P exceeds dim Q");
  if (p.vertices().empty()) throw std::invalid_argument("qcp: P needs a V-representation");
  if (q.halfspaces().empty() || q.vertices().empty()) throw std::invalid_argument("qcp: Q needs both representations");
}

Real squared_distance(const Point& a, const Point& b) {
  Real d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] - b[j]) * (a[j] - b[j]);
  return d;
}

// Shared part of both forms: s, point variables with bounding-box bounds.
QcpInstance skeleton(const Polytope& p, const Polytope& q, QcpForm form) {
  QcpInstance inst;
  inst.form = form;
  inst.p_label = p.name();
  inst.q_label = q.name();
  inst.p_dim = p.dim();
  inst.q_dim = q.dim();
  inst.n = static_cast<int>(p.vertices().size());
  inst.m = static_cast<int>(q.halfspaces().size());
  inst.s_lower = keplerian_bound(p, q);
  const Real ratio = circumradius(q) / inradius(p);
  inst.variables.push_back({"s", inst.s_lower, ratio * ratio});

  Point lo = q.vertices().front(), hi = q.vertices().front();
  for (const auto& v : q.vertices())
    for (int j = 0; j < q.dim(); ++j) {
      lo[j] = min(lo[j], v[j]);
      hi[j] = max(hi[j], v[j]);
    }
  const char prefix = form == QcpForm::Basic ? 'v' : 'u';
  const int points = form == QcpForm::Basic ? inst.n : p.dim() + 1;
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < q.dim(); ++j)
      inst.variables.push_back({prefix + std::to_string(i) + "_" + std::to_string(j), lo[j], hi[j]});
  return inst;
}

// Squared volume (Gram determinant) of the simplex edges v_b - v_0.
Real gram_volume(const std::vector<Point>& verts, const std::vector<int>& idx) {
  const int k = static_cast<int>(idx.size()) - 1;
  if (k == 0) return Real(1);
  RealMat g(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      g(a, b) = dot(verts[idx[a + 1]] - verts[idx[0]], verts[idx[b + 1]] - verts[idx[0]]);
  return g.fullPivLu().determinant();
}

void require_reduced(const QcpInstance& inst, const char* what) {
  if (inst.form != QcpForm::Reduced) throw std::invalid_argument(std::string(what) + ": needs the reduced form");
}

}  // namespace

std::size_t QcpInstance::inequality_count() const {
  return static_cast<std::size_t>(std::count_if(linear.begin(), linear.end(), [](const LinearConstraint& c) {
    return c.relation == Relation::LessEqual;
  }));
}

std::size_t QcpInstance::equality_count() const { return linear.size() - inequality_count(); }

Real keplerian_bound(const Polytope& p, const Polytope& q) {
  PrecisionScope scope(working_digits(p, q));
  const Real ratio = inradius(q) / circumradius(p);
  return ratio * ratio;
}

bool centrally_symmetric(const Polytope& p, const Real& tol) {
  PrecisionScope scope(p.precision_digits());
  const Point c = p.centroid();
  const Real tol2 = tol * tol;
  for (const auto& v : p.vertices()) {
    const Point image = Real(2) * c - v;
    bool found = false;
    for (const auto& w : p.vertices())
      if (squared_distance(image, w) <= tol2) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

QcpInstance build_basic(const Polytope& p, const Polytope& q) {
  check_pair(p, q);
  PrecisionScope scope(working_digits(p, q));
  QcpInstance inst = skeleton(p, q, QcpForm::Basic);
  const std::size_t nvar = inst.variables.size();
  for (int i = 0; i < inst.n; ++i)
    for (int k = 0; k < inst.m; ++k) {
      const auto& h = q.halfspaces()[k];
      LinearConstraint row{std::vector<Real>(nvar, Real(0)), h.offset, Relation::LessEqual,
                           "v" + std::to_string(i) + " in H" + std::to_string(k)};
      for (int j = 0; j < inst.q_dim; ++j) row.coeffs[inst.var_index(i, j)] = h.normal[j];
      inst.linear.push_back(std::move(row));
    }
  const auto& w = p.vertices();
  for (int i = 0; i < inst.n; ++i)
    for (int j = i + 1; j < inst.n; ++j) inst.quadratic.push_back({i, j, squared_distance(w[i], w[j])});
  return inst;
}

std::vector<int> greedy_affine_basis(const Polytope& p) {
  if (p.vertices().empty()) throw std::invalid_argument("affine basis: no vertices");
  PrecisionScope scope(p.precision_digits());
  const auto& v = p.vertices();
  const Point c = p.centroid();
  std::vector<int> basis{0};
  for (int i = 1; i < static_cast<int>(v.size()); ++i)
    if (squared_distance(v[i], c) > squared_distance(v[basis[0]], c)) basis[0] = i;
  const Real scale = squared_distance(v[basis[0]], c);
  for (int k = 1; k <= p.dim(); ++k) {
    int best = -1;
    Real best_vol = 0;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (std::find(basis.begin(), basis.end(), i) != basis.end()) continue;
      auto trial = basis;
      trial.push_back(i);
      Real vol = gram_volume(v, trial);
      if (vol > best_vol) {
        best_vol = vol;
        best = i;
      }
    }
    // Relative volume threshold: the vertex set must span dim P.
    if (best < 0 || best_vol <= pow(scale, k) * pow(Real(10), -static_cast<long>(p.precision_digits() / 2)))
      throw std::invalid_argument("affine basis: vertex set is affinely degenerate");
    basis.push_back(best);
  }
  return basis;
}

QcpInstance build_reduced(const Polytope& p, const Polytope& q, const std::vector<int>& basis_in) {
  check_pair(p, q);
  PrecisionScope scope(working_digits(p, q));
  const auto& w = p.vertices();
  const int pd = p.dim();
  std::vector<int> basis = basis_in.empty() ? greedy_affine_basis(p) : basis_in;
  if (static_cast<int>(basis.size()) != pd + 1) throw std::invalid_argument("affine basis: needs dim P + 1 vertices");
  for (int b : basis)
    if (b < 0 || b >= static_cast<int>(w.size())) throw std::invalid_argument("affine basis: index out of range");
  const Real scale = squared_distance(w[basis[0]], p.centroid()) + 1;
  if (gram_volume(w, basis) <= pow(scale, pd) * pow(Real(10), -static_cast<long>(p.precision_digits() / 2)))
    throw std::invalid_argument("affine basis: vertices are affinely dependent");

  QcpInstance inst = skeleton(p, q, QcpForm::Reduced);
  inst.basis = basis;

  // Columns (w_b; 1); lambda_i solves M lambda = (w_i; 1).
  RealMat mat(pd + 1, pd + 1);
  for (int b = 0; b <= pd; ++b) {
    for (int j = 0; j < pd; ++j) mat(j, b) = w[basis[b]][j];
    mat(pd, b) = 1;
  }
  const auto lu = mat.fullPivLu();
  for (int i = 0; i < inst.n; ++i) {
    RealVec rhs(pd + 1);
    for (int j = 0; j < pd; ++j) rhs(j) = w[i][j];
    rhs(pd) = 1;
    RealVec lam = lu.solve(rhs);
    inst.affine.emplace_back(lam.data(), lam.data() + pd + 1);
  }

  const std::size_t nvar = inst.variables.size();
  for (int i = 0; i < inst.n; ++i)
    for (int k = 0; k < inst.m; ++k) {
      const auto& h = q.halfspaces()[k];
      LinearConstraint row{std::vector<Real>(nvar, Real(0)), h.offset, Relation::LessEqual,
                           "v" + std::to_string(i) + " in H" + std::to_string(k)};
      for (int b = 0; b <= pd; ++b)
        for (int j = 0; j < inst.q_dim; ++j) row.coeffs[inst.var_index(b, j)] = inst.affine[i][b] * h.normal[j];
      inst.linear.push_back(std::move(row));
    }
  for (int a = 0; a <= pd; ++a)
    for (int b = a + 1; b <= pd; ++b) inst.quadratic.push_back({a, b, squared_distance(w[basis[a]], w[basis[b]])});
  return inst;
}

QcpInstance apply_symmetry(const QcpInstance& inst, const Polytope& p, const Polytope& q,
                           const SymmetryConstraint& sym) {
  PrecisionScope scope(working_digits(p, q));
  QcpInstance out = inst;
  if (sym.pinned()) {
    if (sym.pinned_vertex < 0 || sym.pinned_vertex >= inst.n || sym.pinned_facet < 0 || sym.pinned_facet >= inst.m)
      throw std::invalid_argument("apply_symmetry: pinned vertex or facet out of range");
    // Containment rows come first, vertex-major.
    auto& row = out.linear[static_cast<std::size_t>(sym.pinned_vertex * inst.m + sym.pinned_facet)];
    row.relation = Relation::Equal;
    out.symmetry_notes.push_back("pinned v" + std::to_string(sym.pinned_vertex) + " f" +
                                 std::to_string(sym.pinned_facet));
  }
  if (sym.concentric()) {
    if (!centrally_symmetric(p) || !centrally_symmetric(q))
      throw std::invalid_argument("apply_symmetry: concentric placement needs centrally symmetric P and Q");
    const Point c = q.centroid();
    const std::size_t nvar = inst.variables.size();
    for (int j = 0; j < inst.q_dim; ++j) {
      LinearConstraint row{std::vector<Real>(nvar, Real(0)), c[j], Relation::Equal, "concentric " + std::to_string(j)};
      if (inst.form == QcpForm::Basic) {
        for (int i = 0; i < inst.n; ++i) row.coeffs[inst.var_index(i, j)] = Real(1) / inst.n;
      } else {
        for (int b = 0; b <= inst.p_dim; ++b) {
          Real mean = 0;
          for (int i = 0; i < inst.n; ++i) mean += inst.affine[i][b];
          row.coeffs[inst.var_index(b, j)] = mean / inst.n;
        }
      }
      out.linear.push_back(std::move(row));
    }
    out.symmetry_notes.push_back("concentric");
  }
  return out;
}

std::vector<Real> expand_point(const QcpInstance& reduced, const std::vector<Real>& x) {
  require_reduced(reduced, "expand_point");
  if (x.size() != reduced.variables.size()) throw std::invalid_argument("expand_point: wrong variable count");
  std::vector<Real> out(1 + static_cast<std::size_t>(reduced.n * reduced.q_dim), Real(0));
  out[0] = x[0];
  for (int i = 0; i < reduced.n; ++i)
    for (int j = 0; j < reduced.q_dim; ++j) {
      Real acc = 0;
      for (int b = 0; b <= reduced.p_dim; ++b) acc += reduced.affine[i][b] * x[reduced.var_index(b, j)];
      out[1 + i * reduced.q_dim + j] = acc;
    }
  return out;
}

std::vector<Real> restrict_point(const QcpInstance& reduced, const std::vector<Real>& x) {
  require_reduced(reduced, "restrict_point");
  if (x.size() != 1 + static_cast<std::size_t>(reduced.n * reduced.q_dim))
    throw std::invalid_argument("restrict_point: wrong variable count");
  std::vector<Real> out{x[0]};
  for (int b : reduced.basis)
    for (int j = 0; j < reduced.q_dim; ++j) out.push_back(x[1 + b * reduced.q_dim + j]);
  return out;
}

std::vector<Real> point_from_vertices(const QcpInstance& inst, const Real& s, const std::vector<Point>& vertices) {
  std::vector<int> take;
  if (static_cast<int>(vertices.size()) == inst.point_count()) {
    for (int i = 0; i < inst.point_count(); ++i) take.push_back(i);
  } else if (inst.form == QcpForm::Reduced && static_cast<int>(vertices.size()) == inst.n) {
    take = inst.basis;
  } else {
    throw std::invalid_argument("point_from_vertices: wrong vertex count");
  }
  std::vector<Real> x{s};
  for (int i : take) {
    if (static_cast<int>(vertices[i].size()) != inst.q_dim)
      throw std::invalid_argument("point_from_vertices: vertex dimension mismatch");
    for (const auto& c : vertices[i]) x.push_back(c);
  }
  return x;
}

QcpFeasibility check_point(const QcpInstance& inst, const std::vector<Real>& x, const Real& tol) {
  if (x.size() != inst.variables.size()) throw std::invalid_argument("check_point: wrong variable count");
  QcpFeasibility f;
  bool first = true;
  for (const auto& row : inst.linear) {
    Real lhs = 0;
    for (std::size_t c = 0; c < x.size(); ++c)
      if (row.coeffs[c] != 0) lhs += row.coeffs[c] * x[c];
    Real v = row.relation == Relation::Equal ? abs(lhs - row.rhs) : lhs - row.rhs;
    f.linear_violation = first ? v : max(f.linear_violation, v);
    first = false;
  }
  f.quadratic_residual = 0;
  for (const auto& qc : inst.quadratic) {
    Real d = 0;
    for (int j = 0; j < inst.q_dim; ++j) {
      const Real diff = x[inst.var_index(qc.i, j)] - x[inst.var_index(qc.j, j)];
      d += diff * diff;
    }
    f.quadratic_residual = max(f.quadratic_residual, abs(d - x[0] * qc.target));
  }
  f.bound_violation = 0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    f.bound_violation = max(f.bound_violation, inst.variables[c].lower - x[c]);
    f.bound_violation = max(f.bound_violation, x[c] - inst.variables[c].upper);
  }
  f.feasible = f.linear_violation <= tol && f.quadratic_residual <= tol && f.bound_violation <= tol;
  return f;
}

nlohmann::json qcp_to_json(const QcpInstance& inst, unsigned digits) {
  auto num = [&](const Real& v) { return to_decimal(v, digits); };
  nlohmann::json vars = nlohmann::json::array();
  for (const auto& v : inst.variables) vars.push_back({{"name", v.name}, {"lower", num(v.lower)}, {"upper", num(v.upper)}});
  nlohmann::json linear = nlohmann::json::array();
  for (const auto& row : inst.linear) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : row.coeffs) coeffs.push_back(num(c));
    linear.push_back({{"label", row.label},
                      {"coeffs", coeffs},
                      {"relation", row.relation == Relation::Equal ? "=" : "<="},
                      {"rhs", num(row.rhs)}});
  }
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& qc : inst.quadratic) quad.push_back({{"points", {qc.i, qc.j}}, {"target", num(qc.target)}});
  nlohmann::json affine = nlohmann::json::array();
  for (const auto& row : inst.affine) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(num(c));
    affine.push_back(r);
  }
  return {{"form", inst.form == QcpForm::Basic ? "basic" : "reduced"},
          {"P", inst.p_label},
          {"Q", inst.q_label},
          {"p_dim", inst.p_dim},
          {"q_dim", inst.q_dim},
          {"n", inst.n},
          {"m", inst.m},
          {"objective", {{"maximize", "s"}}},
          {"variables", vars},
          {"linear", linear},
          {"quadratic", quad},
          {"s_lower", num(inst.s_lower)},
          {"basis", inst.basis},
          {"affine", affine},
          {"symmetry", inst.symmetry_notes}};
}

QcpInstance qcp_from_json(const nlohmann::json& j, unsigned digits) {
  PrecisionScope scope(digits);
  auto num = [&](const nlohmann::json& v) { return parse_real(v.get<std::string>(), digits); };
  try {
    QcpInstance inst;
    const std::string form = j.at("form").get<std::string>();
    if (form != "basic" && form != "reduced") throw std::invalid_argument("unknown form " + form);
    inst.form = form == "basic" ? QcpForm::Basic : QcpForm::Reduced;
    inst.p_label = j.at("P").get<std::string>();
    inst.q_label = j.at("Q").get<std::string>();
    inst.p_dim = j.at("p_dim").get<int>();
    inst.q_dim = j.at("q_dim").get<int>();
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    for (const auto& v : j.at("variables"))
      inst.variables.push_back({v.at("name").get<std::string>(), num(v.at("lower")), num(v.at("upper"))});
    for (const auto& row : j.at("linear")) {
      LinearConstraint c;
      c.label = row.at("label").get<std::string>();
      for (const auto& x : row.at("coeffs")) c.coeffs.push_back(num(x));
      if (c.coeffs.size() != inst.variables.size()) throw std::invalid_argument("row length mismatch");
      const std::string rel = row.at("relation").get<std::string>();
      if (rel != "<=" && rel != "=") throw std::invalid_argument("unknown relation " + rel);
      c.relation = rel == "=" ? Relation::Equal : Relation::LessEqual;
      c.rhs = num(row.at("rhs"));
      inst.linear.push_back(std::move(c));
    }
    for (const auto& qc : j.at("quadratic"))
      inst.quadratic.push_back({qc.at("points").at(0).get<int>(), qc.at("points").at(1).get<int>(), num(qc.at("target"))});
    inst.s_lower = num(j.at("s_lower"));
    inst.basis = j.at("basis").get<std::vector<int>>();
    for (const auto& row : j.at("affine")) {
      std::vector<Real> r;
      for (const auto& x : row) r.push_back(num(x));
      inst.affine.push_back(std::move(r));
    }
    inst.symmetry_notes = j.at("symmetry").get<std::vector<std::string>>();
    if (inst.variables.empty() || static_cast<int>(inst.variables.size()) != 1 + inst.point_count() * inst.q_dim)
      throw std::invalid_argument("variable count does not match the form");
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("qcp_from_json: ") + e.what());
  }
}

}  // namespace polyincl
