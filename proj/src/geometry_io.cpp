#include "polyincl/geometry_io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace polyincl {

nlohmann::json polytope_to_json(const Polytope& p) {
  const unsigned digits = p.precision_digits();
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : p.vertices()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(to_decimal(x, digits));
    verts.push_back(row);
  }
  nlohmann::json hs = nlohmann::json::array();
  for (const auto& h : p.halfspaces()) {
    nlohmann::json normal = nlohmann::json::array();
    for (const auto& x : h.normal) normal.push_back(to_decimal(x, digits));
    hs.push_back({{"normal", normal}, {"offset", to_decimal(h.offset, digits)}});
  }
  return {{"dim", p.dim()},
          {"name", p.name()},
          {"vertices", verts},
          {"halfspaces", hs},
          {"precision_digits", digits}};
}

Polytope polytope_from_json(const nlohmann::json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    const unsigned digits = j.value("precision_digits", kDefaultDigits);
    auto parse = [&](const nlohmann::json& s) {
      if (s.is_string()) return parse_real(s.get<std::string>(), digits);
      if (s.is_number()) return parse_real(s.dump(), digits);
      throw std::invalid_argument("coordinate must be a decimal string");
    };
    std::vector<Point> verts;
    for (const auto& row : j.value("vertices", nlohmann::json::array())) {
      Point v;
      for (const auto& x : row) v.push_back(parse(x));
      verts.push_back(std::move(v));
    }
    std::vector<Halfspace> hs;
    for (const auto& h : j.value("halfspaces", nlohmann::json::array())) {
      Point a;
      for (const auto& x : h.at("normal")) a.push_back(parse(x));
      hs.push_back({std::move(a), parse(h.at("offset"))});
    }
    return Polytope(dim, j.value("name", std::string("polytope")), std::move(verts), std::move(hs), digits);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("polytope JSON: ") + e.what());
  }
}

std::string polytope_to_off(const Polytope& p) {
  std::ostringstream out;
  out << std::setprecision(17);
  const auto& vs = p.vertices();
  std::vector<std::vector<int>> faces;
  if (p.dim() == 3) {
    faces = facet_vertex_indices(p, Real("1e-20"));
  } else {
    // Vertices sorted by angle around the centroid form the single face.
    Point c = p.centroid();
    std::vector<std::pair<double, int>> keyed;
    for (std::size_t i = 0; i < vs.size(); ++i)
      keyed.emplace_back(std::atan2((vs[i][1] - c[1]).convert_to<double>(), (vs[i][0] - c[0]).convert_to<double>()),
                         static_cast<int>(i));
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> face;
    for (auto& k : keyed) face.push_back(k.second);
    faces.push_back(face);
  }
  out << "OFF\n" << vs.size() << ' ' << faces.size() << " 0\n";
  for (const auto& v : vs) {
    for (int j = 0; j < 3; ++j) {
      double x = j < p.dim() ? v[j].convert_to<double>() : 0.0;
      if (x == 0.0) x = 0.0;  // no negative zero
      out << (j ? " " : "") << x;
    }
    out << '\n';
  }
  for (const auto& f : faces) {
    out << f.size();
    for (int i : f) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

}  // namespace polyincl
