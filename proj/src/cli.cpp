#include "polyincl/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "polyincl/algrec.hpp"
#include "polyincl/formula.hpp"
#include "polyincl/geometry_io.hpp"
#include "polyincl/qcp.hpp"
#include "polyincl/refine.hpp"
#include "polyincl/solver.hpp"

namespace polyincl::cli {

namespace {

/// Fills in a missing V- or H-representation (2D and 3D).
Polytope complete_body(const Polytope& p);

constexpr unsigned kGenDigits = kDefaultDigits;
constexpr unsigned kExactDigits = 100;

bool is_builtin(const std::string& spec) {
  try {
    parse_solid(spec);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CommandError(kUsage, "input", "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CommandError(kUsage, "input", path + ": " + e.what());
  }
}

// The input as written into reports: the builtin name, or the body itself.
nlohmann::json input_record(const std::string& spec, const Polytope& body) {
  if (is_builtin(spec)) return spec;
  return polytope_to_json(body);
}

Polytope body_from_record(const nlohmann::json& rec, unsigned digits) {
  if (rec.is_string()) return load_body(rec.get<std::string>(), digits);
  try {
    return complete_body(polytope_from_json(rec));
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, "input", e.what());
  }
}

SolveConfig solve_config(const RunConfig& cfg) {
  SolveConfig sc;
  sc.starts = cfg.starts;
  sc.grid = cfg.grid;
  sc.seed = cfg.seed;
  sc.feasibility_tol = cfg.tolerance();
  sc.allow_reflections = cfg.reflections;
  const bool pinned = cfg.pin_vertex >= 0;
  if (cfg.concentric && pinned) sc.symmetry.mode = SymmetryMode::Both;
  else if (cfg.concentric) sc.symmetry.mode = SymmetryMode::Concentric;
  else if (pinned) sc.symmetry.mode = SymmetryMode::VertexPinned;
  sc.symmetry.pinned_vertex = std::max(cfg.pin_vertex, 0);
  sc.symmetry.pinned_facet = cfg.pin_facet;
  return sc;
}

SolveReport solve_pair(const Polytope& p, const Polytope& q, const RunConfig& cfg) {
  if (cfg.concentric && !(centrally_symmetric(p) && centrally_symmetric(q)))
    throw CommandError(kUsage, "solve", "--concentric needs centrally symmetric P and Q");
  SolveReport r;
  try {
    r = solve_global(p, q, solve_config(cfg));
  } catch (const std::exception& e) {
    throw CommandError(kSolveFailure, "solve", e.what());
  }
  if (r.best.achieved_tol > Real(cfg.tolerance()))
    throw CommandError(kSolveFailure, "solve", "placement violates containment by " + to_decimal(r.best.achieved_tol, 3));
  return r;
}

std::string format_or(const RunConfig& cfg, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw CommandError(kUsage, cfg.command, "unsupported format " + f);
}

void write_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

char solid_letter(const std::string& spec) { return spec.size() == 1 ? spec[0] : 0; }

}  // namespace

double RunConfig::tolerance() const {
  Rational t;
  try {
    t = decimal_to_rational(tol);
  } catch (const std::invalid_argument&) {
    throw CommandError(kUsage, "config", "malformed tolerance " + tol);
  }
  return t.convert_to<double>();
}

void RunConfig::validate() const {
  const double t = tolerance();
  if (!(t > 0 && t <= 1e-2)) throw CommandError(kUsage, "config", "tolerance must lie in (0, 1e-2]");
  if (digits != 0 && digits < 30) throw CommandError(kUsage, "config", "digits must be at least 30");
  if (max_degree < 1) throw CommandError(kUsage, "config", "max-degree must be positive");
  if (starts < 0 || grid < 0 || starts + grid == 0) throw CommandError(kUsage, "config", "empty search");
  if (m_max < 4) throw CommandError(kUsage, "config", "m-max must be at least 4");
  if (pin_facet < 0) throw CommandError(kUsage, "config", "pin-facet must be non-negative");
}

namespace {

// Vertices of {a.x <= b} in 2D/3D by intersecting every dim-subset of the
// bounding hyperplanes and keeping the feasible, distinct points.
std::vector<Point> enumerate_vertices(const Polytope& p) {
  const int dim = p.dim();
  const auto& hs = p.halfspaces();
  const int m = static_cast<int>(hs.size());
  PrecisionScope scope(p.precision_digits());
  const Real tol = pow(Real(10), -static_cast<int>(p.precision_digits() / 2));
  std::vector<Point> verts;
  std::vector<int> idx(static_cast<std::size_t>(dim));
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == dim) {
      Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> a(dim, dim);
      Eigen::Matrix<Real, Eigen::Dynamic, 1> b(dim);
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) a(r, c) = hs[idx[r]].normal[c];
        b(r) = hs[idx[r]].offset;
      }
      const auto lu = a.fullPivLu();
      if (lu.rank() < dim) return;
      const Eigen::Matrix<Real, Eigen::Dynamic, 1> x = lu.solve(b);
      const Point v(x.data(), x.data() + dim);
      for (const auto& h : hs)
        if (dot(h.normal, v) - h.offset > tol) return;
      for (const auto& w : verts)
        if (norm(w - v) < tol) return;
      verts.push_back(v);
      return;
    }
    for (int k = start; k < m; ++k) {
      idx[depth] = k;
      choose(k + 1, depth + 1);
    }
  };
  choose(0, 0);
  return verts;
}

Polytope complete_body(const Polytope& p) {
  const bool has_v = !p.vertices().empty(), has_h = !p.halfspaces().empty();
  if (has_v && has_h) return p;
  if (p.dim() < 2 || p.dim() > 3) throw CommandError(kUsage, "input", "bodies need both representations beyond 3D");
  try {
    const std::vector<Point> verts = has_v ? p.vertices() : enumerate_vertices(p);
    if (verts.empty()) throw std::invalid_argument("no vertices (empty or unbounded halfspace system)");
    return hull_2d3d(verts, p.precision_digits(), p.name());
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, "input", p.name() + ": " + e.what());
  }
}

}  // namespace

Polytope load_body(const std::string& spec, unsigned digits) {
  if (is_builtin(spec)) return make_solid(parse_solid(spec), Real(1), digits);
  if (!std::filesystem::exists(spec))
    throw CommandError(kUsage, "input", "unknown body '" + spec + "' (not a builtin name or a file)");
  try {
    return complete_body(polytope_from_json(read_json_file(spec)));
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, "input", spec + ": " + e.what());
  }
}

void cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.inputs.size() != 1) throw CommandError(kUsage, "gen", "expects one body spec");
  const unsigned digits = cfg.digits_or(kGenDigits);
  const std::string fmt = format_or(cfg, "json", {"json", "off"});
  SolidSpec spec;
  Real edge;
  try {
    spec = parse_solid(cfg.inputs[0]);
    edge = parse_real(cfg.edge, digits);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kUsage, "gen", e.what());
  }
  if (!(edge > 0)) throw CommandError(kUsage, "gen", "edge must be positive");
  const Polytope p = make_solid(spec, edge, digits);
  if (fmt == "json") write_json(out, polytope_to_json(p));
  else out << polytope_to_off(p);
  log << "body=" << p.name() << " vertices=" << p.vertices().size() << " facets=" << p.halfspaces().size() << "\n";
}

void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.inputs.size() != 2) throw CommandError(kUsage, "solve", "expects P and Q");
  format_or(cfg, "json", {"json"});
  const Polytope p = load_body(cfg.inputs[0]), q = load_body(cfg.inputs[1]);
  const SolveReport r = solve_pair(p, q, cfg);
  nlohmann::json j = report_to_json(r);
  j["inputs"] = {{"P", input_record(cfg.inputs[0], p)}, {"Q", input_record(cfg.inputs[1], q)}};
  write_json(out, j);
  log << "sigma=" << to_decimal(r.best.sigma, 10) << " s=" << to_decimal(r.best.s, 10) << " starts=" << r.starts_used
      << "\n";
}

int cmd_exact(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.inputs.size() != 2) throw CommandError(kUsage, "exact", "expects P and Q");
  format_or(cfg, "json", {"json"});
  const unsigned digits = cfg.digits_or(kExactDigits);
  const unsigned height = cfg.height_digits != 0
                              ? cfg.height_digits
                              : std::clamp((digits - std::min(digits, 50u)) / static_cast<unsigned>(cfg.max_degree),
                                           3u, 30u);
  const Polytope p = load_body(cfg.inputs[0]), q = load_body(cfg.inputs[1]);
  const SolveReport r = solve_pair(p, q, cfg);

  const IncidenceSystem sys = [&] {
    try {
      return build_square_system(detect_incidences(r.best, p, q), r.best);
    } catch (const IncidenceError& e) {
      throw CommandError(kSolveFailure, "incidences",
                         std::string(e.what()) + " (found " + std::to_string(e.found) + ", needed " +
                             std::to_string(e.needed) + ")");
    }
  }();
  auto refine_to = [&](unsigned d) {
    try {
      return newton_refine(sys, r.best, d + 10);
    } catch (const std::exception& e) {
      throw CommandError(kSolveFailure, "refine", e.what());
    }
  };
  const HighPrecisionSolution sol = refine_to(digits);
  const std::string sigma = to_decimal(sol.placement.sigma, digits);

  std::optional<AlgebraicNumber> alg;
  try {
    alg = min_poly_guess(sigma, cfg.max_degree, height);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kRecoveryFailure, "recover", e.what());
  }
  if (!alg)
    throw CommandError(kRecoveryFailure, "recover",
                       "no polynomial of degree <= " + std::to_string(cfg.max_degree) + " and height <= 10^" +
                           std::to_string(height) + " at " + std::to_string(digits) + " digits");

  const unsigned recheck_digits = digits + digits / 4 + 10;
  RecheckFn recheck = [&](unsigned d) { return to_decimal(refine_to(d).placement.sigma, d); };
  std::optional<QuadField> closed;
  std::string closed_text;
  const char pl = solid_letter(cfg.inputs[0]), ql = solid_letter(cfg.inputs[1]);
  if (pl && ql && is_builtin(cfg.inputs[0]) && is_builtin(cfg.inputs[1]))
    if (auto cf = closed_form_for(pl, ql)) {
      closed = cf->value;
      closed_text = cf->text;
    }
  const VerificationReport rep = verify_algebraic(*alg, recheck_digits, recheck, closed);

  nlohmann::json j;
  j["P"] = r.p_label;
  j["Q"] = r.q_label;
  j["digits"] = digits;
  j["max_degree"] = cfg.max_degree;
  j["height_digits"] = height;
  j["sigma"] = sigma;
  j["algebraic"] = algebraic_to_json(*alg);
  j["polynomial"] = to_string(alg->poly);
  j["verification"] = report_to_json(rep);
  j["closed_form"] = closed ? nlohmann::json(closed_text) : nlohmann::json(nullptr);
  nlohmann::json refinement = solution_to_json(sol, sys);
  refinement.erase("values");
  j["refinement"] = refinement;
  write_json(out, j);
  log << "poly=" << to_string(alg->poly) << " degree=" << degree(alg->poly) << " minimality=" << alg->minimality()
      << " verified=" << (rep.passed ? "yes" : "no (" + rep.failed_check() + ")") << "\n";
  return rep.passed ? kOk : kVerificationFailure;
}

void cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::string fmt = format_or(cfg, "text", {"text", "csv", "json"});
  const std::string names = "TCODI";
  std::vector<Polytope> solids;
  for (char c : names) solids.push_back(load_body(std::string(1, c)));
  // Rows are containers, columns inscribed bodies.
  std::vector<std::vector<std::string>> cell(5, std::vector<std::string>(5));
  for (int qi = 0; qi < 5; ++qi)
    for (int pi = 0; pi < 5; ++pi) {
      if (qi == pi) continue;
      try {
        cell[qi][pi] = round_significant(solve_pair(solids[pi], solids[qi], cfg).best.sigma, 8);
      } catch (const CommandError& e) {
        throw CommandError(e.code, "table", std::string(1, names[pi]) + " in " + names[qi] + ": " + e.what());
      }
    }
  if (fmt == "csv") {
    out << "Q\\P";
    for (char c : names) out << "," << c;
    out << "\n";
    for (int qi = 0; qi < 5; ++qi) {
      out << names[qi];
      for (int pi = 0; pi < 5; ++pi) out << "," << cell[qi][pi];
      out << "\n";
    }
  } else if (fmt == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (int qi = 0; qi < 5; ++qi)
      for (int pi = 0; pi < 5; ++pi)
        if (qi != pi) rows.push_back({{"P", std::string(1, names[pi])}, {"Q", std::string(1, names[qi])}, {"sigma", cell[qi][pi]}});
    write_json(out, {{"entries", rows}, {"seed", cfg.seed}});
  } else {
    out << std::left << std::setw(5) << "Q\\P";
    for (char c : names) out << std::right << std::setw(12) << c;
    out << "\n";
    for (int qi = 0; qi < 5; ++qi) {
      out << std::left << std::setw(5) << names[qi];
      for (int pi = 0; pi < 5; ++pi) out << std::right << std::setw(12) << (qi == pi ? "-" : cell[qi][pi]);
      out << "\n";
    }
  }
  log << "pairs=20\n";
}

void cmd_polygon_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const std::string fmt = format_or(cfg, "csv", {"csv", "json"});
  std::optional<Formula> formula;
  bool coprime_only = true;
  std::string formula_name;
  if (!cfg.formula_file.empty()) {
    if (!std::filesystem::exists(cfg.formula_file))
      throw CommandError(kUsage, "polygon-scan", "formula file not found: " + cfg.formula_file);
    const nlohmann::json f = read_json_file(cfg.formula_file);
    try {
      formula = Formula::parse(f.at("expression").get<std::string>());
      coprime_only = f.value("coprime_only", true);
      formula_name = f.value("name", std::string("formula"));
    } catch (const std::exception& e) {
      throw CommandError(kUsage, "polygon-scan", cfg.formula_file + ": " + e.what());
    }
  }
  struct Row {
    int n, m;
    std::string sigma;
    std::optional<double> expected;
  };
  std::vector<Row> rows;
  double max_dev = 0;
  for (int m = 4; m <= cfg.m_max; ++m) {
    const Polytope q = make_polygon(m, Real(1));
    for (int n = 3; n < m; ++n) {
      const SolveReport r = solve_pair(make_polygon(n, Real(1)), q, cfg);
      Row row{n, m, to_decimal(r.best.sigma, 16), std::nullopt};
      if (formula && (!coprime_only || std::gcd(n, m) == 1)) {
        try {
          row.expected = formula->evaluate({{"n", n}, {"m", m}});
        } catch (const std::invalid_argument& e) {
          throw CommandError(kUsage, "polygon-scan", e.what());
        }
        max_dev = std::max(max_dev, std::abs(*row.expected - r.best.sigma.convert_to<double>()));
      }
      rows.push_back(std::move(row));
    }
  }
  auto expected_text = [](const Row& r) {
    if (!r.expected) return std::string();
    std::ostringstream s;
    s << std::setprecision(16) << *r.expected;
    return s.str();
  };
  if (fmt == "csv") {
    out << "n,m,sigma,expected\n";
    for (const auto& r : rows) out << r.n << "," << r.m << "," << r.sigma << "," << expected_text(r) << "\n";
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json e = {{"n", r.n}, {"m", r.m}, {"sigma", r.sigma}};
      if (r.expected) e["expected"] = expected_text(r);
      arr.push_back(e);
    }
    nlohmann::json j = {{"m_max", cfg.m_max}, {"pairs", arr}};
    if (formula) {
      j["formula"] = {{"name", formula_name}, {"expression", formula->text()}, {"coprime_only", coprime_only}};
      std::ostringstream s;
      s << std::setprecision(3) << max_dev;
      j["max_deviation"] = s.str();
    }
    write_json(out, j);
  }
  log << "pairs=" << rows.size();
  if (formula) log << " max_deviation=" << std::setprecision(3) << max_dev;
  log << "\n";
}

void cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.inputs.size() == 2) {
    // The containment problem itself, for external QCP solvers.
    const std::string fmt = format_or(cfg, "qcp", {"qcp", "qcp-reduced"});
    const Polytope p = load_body(cfg.inputs[0]), q = load_body(cfg.inputs[1]);
    QcpInstance inst;
    try {
      inst = fmt == "qcp" ? build_basic(p, q) : build_reduced(p, q);
      const SymmetryConstraint sym = solve_config(cfg).symmetry;
      if (sym.mode != SymmetryMode::None) inst = apply_symmetry(inst, p, q, sym);
    } catch (const std::invalid_argument& e) {
      throw CommandError(kUsage, "export", e.what());
    }
    write_json(out, qcp_to_json(inst));
    log << "variables=" << inst.variables.size() << " inequalities=" << inst.inequality_count()
        << " equalities=" << inst.equality_count() << " quadratic=" << inst.quadratic.size() << "\n";
    return;
  }
  if (cfg.inputs.size() != 1)
    throw CommandError(kUsage, "export", "expects one body spec, a solve report, or P and Q");
  const std::string fmt = format_or(cfg, "off", {"off", "json"});
  const std::string& src = cfg.inputs[0];
  std::optional<nlohmann::json> report;
  if (!is_builtin(src)) {
    if (!std::filesystem::exists(src)) throw CommandError(kUsage, "export", "unknown input " + src);
    nlohmann::json j = read_json_file(src);
    if (j.contains("rotation") && j.contains("inputs")) report = std::move(j);
  }
  if (!report) {
    const Polytope p = load_body(src);
    if (fmt == "off") out << polytope_to_off(p);
    else write_json(out, polytope_to_json(p));
    log << "bodies=1 vertices=" << p.vertices().size() << "\n";
    return;
  }
  Polytope placed = [&] {
    try {
      const auto& j = *report;
      Polytope p = body_from_record(j.at("inputs").at("P"), kDefaultDigits);
      const Polytope q = body_from_record(j.at("inputs").at("Q"), kDefaultDigits);
      const bool reflected = j.at("reflected").get<bool>();
      const int dim = q.dim();
      std::vector<Real> params;
      if (dim == 3) {
        for (const auto& x : j.at("rotation_params")) params.push_back(parse_real(x.get<std::string>(), kDefaultDigits));
      } else {
        const auto& rot = j.at("rotation");
        params = {parse_real(rot.at(0).at(0).get<std::string>(), kDefaultDigits),
                  parse_real(rot.at(1).at(0).get<std::string>(), kDefaultDigits)};
      }
      Point t;
      for (const auto& x : j.at("translation")) t.push_back(parse_real(x.get<std::string>(), kDefaultDigits));
      const Real sigma = parse_real(j.at("sigma").get<std::string>(), kDefaultDigits);
      const Placement pl = make_placement(p, q, sigma, params, t, reflected);
      if (reflected) p = mirrored(p);
      std::vector<Point> identity(static_cast<std::size_t>(p.dim()), Point(static_cast<std::size_t>(p.dim()), Real(0)));
      for (int k = 0; k < p.dim(); ++k) identity[k][k] = 1;
      const Polytope centered = transformed(p, identity, Real(-1) * p.centroid());
      return transformed(centered, pl.rotation, pl.translation, pl.sigma);
    } catch (const CommandError&) {
      throw;
    } catch (const std::exception& e) {
      throw CommandError(kUsage, "export", std::string("malformed solve report: ") + e.what());
    }
  }();
  const Polytope q = body_from_record(report->at("inputs").at("Q"), kDefaultDigits);
  if (fmt == "off") {
    out << "# Q\n" << polytope_to_off(q) << "# P'\n" << polytope_to_off(placed);
  } else {
    write_json(out, {{"Q", polytope_to_json(q)}, {"P_placed", polytope_to_json(placed)}});
  }
  log << "bodies=2 vertices=" << q.vertices().size() << "+" << placed.vertices().size() << "\n";
}

int run(const RunConfig& cfg, std::ostream& console, std::ostream& diag) {
  try {
    cfg.validate();
    std::ofstream file;
    std::ostringstream buffer;
    const bool to_file = !cfg.out.empty();
    std::ostream& payload = to_file ? static_cast<std::ostream&>(buffer) : console;
    std::ostream& summary = to_file ? console : diag;
    int code = kOk;
    if (cfg.command == "gen") cmd_gen(cfg, payload, summary);
    else if (cfg.command == "solve") cmd_solve(cfg, payload, summary);
    else if (cfg.command == "exact") code = cmd_exact(cfg, payload, summary);
    else if (cfg.command == "table") cmd_table(cfg, payload, summary);
    else if (cfg.command == "polygon-scan") cmd_polygon_scan(cfg, payload, summary);
    else if (cfg.command == "export") cmd_export(cfg, payload, summary);
    else throw CommandError(kUsage, "usage", "unknown command " + cfg.command);
    if (to_file) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw CommandError(kUsage, "output", "cannot write " + cfg.out);
      file << buffer.str();
    }
    return code;
  } catch (const CommandError& e) {
    diag << "error: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    diag << "error: " << cfg.command << ": " << e.what() << "\n";
    return kSolveFailure;
  }
}

int main(int argc, const char* const* argv, std::ostream& console, std::ostream& diag) {
  CLI::App app{"Largest similar copies of polytopes and exact recovery of their dilation factors", "polyincl"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Random seed for the multistart search")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Feasibility tolerance in (0, 1e-2]")->capture_default_str();
  app.add_option("--digits", cfg.digits, "Working digits (gen: 50, exact: 100)");
  app.add_option("--max-degree", cfg.max_degree, "Largest polynomial degree searched")->capture_default_str();
  app.add_option("--starts", cfg.starts, "Random starts of the local ascent")->capture_default_str();
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  app.add_option("--format", cfg.format, "Output format: json, off, csv or text, by command");
  app.add_option("--grid", cfg.grid, "Euler-angle steps per axis")->capture_default_str();
  app.add_flag("--concentric", cfg.concentric, "Fix P's centroid at Q's centroid");
  app.add_option("--pin-vertex", cfg.pin_vertex, "Pin this vertex of P to a facet of Q");
  app.add_option("--pin-facet", cfg.pin_facet, "Facet of Q used by --pin-vertex")->capture_default_str();
  app.add_flag("--reflections", cfg.reflections, "Also search mirror images of P");

  auto* gen = app.add_subcommand("gen", "Write a builtin body as JSON or OFF");
  gen->add_option("body", cfg.inputs, "T, C, O, D, I or ngon:<n>")->required()->expected(1);
  gen->add_option("--edge", cfg.edge, "Edge length")->capture_default_str();
  auto* solve = app.add_subcommand("solve", "Largest similar copy of P inside Q");
  solve->add_option("bodies", cfg.inputs, "P and Q: builtin names or polytope JSON files")->required()->expected(2);
  auto* exact = app.add_subcommand("exact", "Solve, refine, recover and verify the minimal polynomial of sigma");
  exact->add_option("bodies", cfg.inputs, "P and Q")->required()->expected(2);
  exact->add_option("--height", cfg.height_digits, "Decimal digits of the largest coefficient (default: derived)");
  app.add_subcommand("table", "Reproduce the 5x5 platonic inclusion table");
  auto* scan = app.add_subcommand("polygon-scan", "Regular n-gon in regular m-gon for 3 <= n < m <= m-max");
  scan->add_option("--m-max", cfg.m_max, "Largest container polygon")->capture_default_str();
  scan->add_option("--formula", cfg.formula_file, "JSON file with a closed form to compare against");
  auto* exp = app.add_subcommand("export", "Export a body or a solve report as OFF or JSON");
  exp->add_option("input", cfg.inputs, "Builtin name, polytope JSON or solve report; or P and Q (--format qcp|qcp-reduced)")
      ->required()
      ->expected(1, 2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    console << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    console << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    diag << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, console, diag);
}

}  // namespace polyincl::cli
