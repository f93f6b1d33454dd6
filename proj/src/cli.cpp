#include "vorcell/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "vorcell/degree_lab.hpp"
#include "vorcell/lowrank.hpp"
#include "vorcell/parse.hpp"
#include "vorcell/sdp_relax.hpp"
#include "vorcell/voronoi.hpp"

namespace vorcell::cli {

namespace {

using Json = nlohmann::ordered_json;

// Input problems that are the caller's fault: exit 1 with the message.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// An argument that names an existing file stands for its contents.
std::string file_or_literal(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return slurp(arg);
  return arg;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(what + ": " + e.what());
  }
}

// Integers, "a/b" and plain decimals such as "-0.25", all exact.
Rational parse_number(std::string_view s) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational::parse(s);
  std::string_view sign, whole = s.substr(0, dot);
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
    sign = whole.substr(0, 1);
    whole.remove_prefix(1);
  }
  const std::string_view frac = s.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  const std::string digits = std::string(sign) + std::string(whole) + std::string(frac);
  return Rational::parse(digits) / Rational::parse("1" + std::string(frac.size(), '0'));
}

Rational json_number(const Json& v) {
  if (v.is_string()) return parse_number(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return parse_number(v.dump());
  throw UsageError("expected a number, got " + v.dump());
}

std::vector<Rational> parse_point(const std::string& arg) {
  const Json j = parse_json(file_or_literal(arg), "point");
  if (!j.is_array()) throw UsageError("point must be a JSON array");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(json_number(v));
  return out;
}

template <Coefficient K>
std::vector<K> to_field(const std::vector<Rational>& v, const Field& f) {
  std::vector<K> out;
  for (const auto& r : v) out.push_back(K::from_rational(r, f));
  return out;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& r : v) out.push_back(r.to_double());
  return out;
}

struct IdealFile {
  RingPtr ring;
  std::vector<std::string> gens;
  std::optional<unsigned> codim;
};

IdealFile read_ideal_file(const std::string& path) {
  const Json j = parse_json(slurp(path), path);
  if (!j.is_object() || !j.contains("vars") || !j.contains("gens")) {
    throw UsageError(path + ": an ideal needs \"vars\" and \"gens\"");
  }
  IdealFile f;
  const Field field = Field::parse(j.value("field", std::string("Q")));
  f.ring = Ring::make(j.at("vars").get<std::vector<std::string>>(), field);
  f.gens = j.at("gens").get<std::vector<std::string>>();
  if (j.contains("codim") && !j.at("codim").is_null()) f.codim = j.at("codim").get<unsigned>();
  return f;
}

template <Coefficient K>
IdealSpec<K> build_ideal(const IdealFile& f) {
  std::vector<Polynomial<K>> gens;
  for (std::size_t i = 0; i < f.gens.size(); ++i) {
    try {
      gens.push_back(parse_polynomial<K>(f.gens[i], f.ring));
    } catch (const ParseError& e) {
      throw UsageError("generator " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (gens.empty()) throw UsageError("the ideal has no generators");
  return IdealSpec<K>(f.ring, std::move(gens), f.codim);
}

template <Coefficient K>
Json gens_json(const IdealSpec<K>& ideal) {
  Json a = Json::array();
  for (const auto& g : ideal.gens()) a.push_back(g.to_string());
  return a;
}

template <Coefficient K>
Json values_json(const std::vector<K>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << text;
}

void emit(const Json& report, const RunConfig& cfg, std::ostream& out) { emit(report.dump(2) + "\n", cfg, out); }

GroebnerOptions groebner_options(const RunConfig& cfg) {
  GroebnerOptions o = GroebnerOptions::from_env();
  if (cfg.budget) {
    if (*cfg.budget == 0) throw UsageError("--budget must be positive");
    o.max_reductions = *cfg.budget;
  }
  return o;
}

Json header(std::string_view command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

// voronoi

struct VoronoiArgs {
  std::string ideal_path;
  std::string point;
  std::optional<unsigned> codim;
  bool allow_singular = false;
  std::string strategy = "sliced";
};

void add_normal_line(Json& j, const VoronoiReport<Rational>& r) {
  NormalLineBoundary b;
  try {
    b = boundary_on_normal_line(r);
  } catch (const std::invalid_argument&) {
    return;
  } catch (const std::domain_error&) {
    return;
  }
  Json roots = Json::array();
  for (std::size_t i = 0; i < b.roots.size(); ++i) {
    roots.push_back(Json{{"lo", b.roots[i].lo.to_string()},
                         {"hi", b.roots[i].hi.to_string()},
                         {"approx", b.approx[i]}});
  }
  j["normal_line"] = Json{{"direction", values_json(b.direction)},
                          {"poly", b.poly.to_string("lambda")},
                          {"roots", roots},
                          {"lower", b.lower ? Json(*b.lower) : Json(nullptr)},
                          {"upper", b.upper ? Json(*b.upper) : Json(nullptr)},
                          {"reach", finite_or_null(b.reach)}};
}

template <Coefficient K>
Json voronoi_json(const IdealFile& file, const VoronoiArgs& a, const RunConfig& cfg) {
  const IdealSpec<K> ideal = build_ideal<K>(file);
  const std::vector<K> y = to_field<K>(parse_point(a.point), file.ring->field());
  if (y.size() != file.ring->nvars()) {
    throw UsageError("point has " + std::to_string(y.size()) + " coordinates, the ring has " +
                     std::to_string(file.ring->nvars()));
  }
  VoronoiOptions<K> opts;
  opts.codim = a.codim;
  opts.allow_singular = a.allow_singular;
  if (a.strategy == "direct") {
    opts.strategy = VoronoiStrategy::Direct;
  } else if (a.strategy != "sliced") {
    throw UsageError("unknown strategy '" + a.strategy + "'");
  }
  opts.groebner = groebner_options(cfg);
  const VoronoiReport<K> r = voronoi_ideal(ideal, y, opts);

  Json j = header("voronoi");
  j["input"] = Json{{"vars", file.ring->names()},
                    {"field", file.ring->field().to_string()},
                    {"gens", gens_json(ideal)},
                    {"codim", file.codim ? Json(*file.codim) : Json(nullptr)}};
  j["y"] = values_json(r.y);
  j["codim"] = r.codim;
  j["strategy"] = a.strategy;
  j["u_vars"] = r.rings.u->names();
  j["normal_space"] = gens_json(r.normal_space);
  j["voronoi_ideal"] = gens_json(r.voronoi_ideal);
  j["zero_dimensional"] = r.zero_dimensional;
  j["degree"] = r.degree ? Json(*r.degree) : Json(nullptr);
  if (r.boundary_poly && r.boundary_var) {
    const std::string& var = r.rings.u->name(*r.boundary_var);
    j["boundary_poly"] = Json{{"var", var}, {"poly", r.boundary_poly->to_string(var)}};
  } else {
    j["boundary_poly"] = nullptr;
  }
  if (r.radical) {
    j["radical"] = Json{{"gens", gens_json(*r.radical)},
                        {"degree", r.radical_degree ? Json(*r.radical_degree) : Json(nullptr)}};
  } else {
    j["radical"] = nullptr;
  }
  j["boundary_hypersurface"] = r.boundary_hypersurface ? Json(r.boundary_hypersurface->to_string()) : Json(nullptr);
  if (r.components) {
    Json comps = Json::array();
    for (const auto& c : *r.components) {
      comps.push_back(Json{{"gens", gens_json(c.ideal)},
                           {"point", c.point ? values_json(*c.point) : Json(nullptr)},
                           {"real", c.real ? Json(*c.real) : Json(nullptr)}});
    }
    j["components"] = comps;
  } else {
    j["components"] = nullptr;
  }
  if constexpr (std::is_same_v<K, Rational>) add_normal_line(j, r);
  if (cfg.timings) {
    Json t = Json::object();
    for (const auto& [stage, secs] : r.timings) t[stage] = secs;
    j["timings"] = t;
  }
  return j;
}

int cmd_voronoi(const VoronoiArgs& a, const RunConfig& cfg, std::ostream& out) {
  const IdealFile file = read_ideal_file(a.ideal_path);
  const Json j = file.ring->field().is_prime() ? voronoi_json<Fp>(file, a, cfg) : voronoi_json<Rational>(file, a, cfg);
  emit(j, cfg, out);
  return kExitOk;
}

// degree

struct DegreeArgs {
  unsigned n = 0;
  unsigned d = 0;
  bool homogeneous = false;
  bool formula = false;
  bool force = false;
};

int cmd_degree(const DegreeArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!degree_whitelisted(a.n, a.d, a.homogeneous)) {
    err << "warning: (n, d) = (" << a.n << ", " << a.d << ") is outside the desk-scale whitelist";
    if (!a.force) {
      err << "; pass --force to run it anyway\n";
      return kExitError;
    }
    err << "\n";
  }
  const auto start = std::chrono::steady_clock::now();
  const DegreeExperiment e = hypersurface_degree(a.n, a.d, a.homogeneous, cfg.prime, cfg.seed, groebner_options(cfg));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json j = header("degree");
  j["n"] = a.n;
  j["d"] = a.d;
  j["homogeneous"] = a.homogeneous;
  j["seed"] = e.seed;
  j["prime"] = e.prime;
  j["degree"] = e.degree;
  j["stable"] = e.stable;
  Json reps = Json::array();
  for (const auto& r : e.replicas) {
    Json rj{{"seed", r.seed},
            {"prime", r.prime},
            {"degree", r.degree ? Json(*r.degree) : Json(nullptr)},
            {"attempts", r.attempts}};
    if (!r.error.empty()) rj["error"] = r.error;
    reps.push_back(rj);
  }
  j["replicas"] = reps;
  if (a.formula) j["formula"] = conjecture_hypersurface(a.n, a.d, a.homogeneous);
  if (cfg.timings) j["timings"] = Json{{"total", secs}};
  emit(j, cfg, out);
  return kExitOk;
}

// formula

struct FormulaArgs {
  std::string kind;
  std::int64_t n = 0, d = 0, g = 0, chi = 0, g2 = 0, m = 0, r = 0;
  bool homogeneous = false;
};

Json table_json(bool homogeneous) {
  Json rows = Json::array();
  bool all = true;
  for (const auto& row : golden_table(homogeneous)) {
    Json cells = Json::array();
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      const auto d = static_cast<std::int64_t>(i + 2);
      const std::int64_t f = conjecture_hypersurface(row.n, d, homogeneous);
      all = all && f == row.values[i];
      cells.push_back(Json{{"d", d}, {"golden", row.values[i]}, {"formula", f}});
    }
    rows.push_back(Json{{"n", row.n}, {"cells", cells}});
  }
  return Json{{"homogeneous", homogeneous}, {"rows", rows}, {"agree", all}};
}

int cmd_formula(const FormulaArgs& a, const RunConfig& cfg, std::ostream& out) {
  Json j = header("formula");
  j["kind"] = a.kind;
  if (a.kind == "hypersurface") {
    j["inputs"] = Json{{"n", a.n}, {"d", a.d}, {"homogeneous", a.homogeneous}};
    j["value"] = conjecture_hypersurface(a.n, a.d, a.homogeneous);
  } else if (a.kind == "curve") {
    j["inputs"] = Json{{"d", a.d}, {"g", a.g}};
    j["value"] = formula_curve(a.d, a.g);
  } else if (a.kind == "plane-curve") {
    const std::int64_t g = plane_curve_genus(a.d);
    j["inputs"] = Json{{"d", a.d}, {"g", g}};
    j["value"] = formula_curve(a.d, g);
  } else if (a.kind == "surface") {
    j["inputs"] = Json{{"d", a.d}, {"chi", a.chi}, {"g", a.g2}};
    j["value"] = formula_surface(a.d, a.chi, a.g2);
  } else if (a.kind == "cone") {
    j["inputs"] = Json{{"d", a.d}, {"g", a.g}};
    j["value"] = formula_cone(a.d, a.g);
  } else if (a.kind == "lowrank") {
    j["inputs"] = Json{{"m", a.m}, {"n", a.n}, {"r", a.r}};
    j["value"] = lowrank_voronoi_degree(a.m, a.n, a.r);
  } else if (a.kind == "table") {
    j["table"] = table_json(a.homogeneous);
  }
  emit(j, cfg, out);
  return kExitOk;
}

// lowrank

Matrix parse_matrix(const std::string& arg, const std::string& what) {
  const std::string text = file_or_literal(arg);
  std::vector<std::vector<double>> rows;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    const Json j = parse_json(text, what);
    if (!j.is_array()) throw UsageError(what + " must be a nested array");
    for (const auto& row : j) {
      if (!row.is_array()) throw UsageError(what + " must be a nested array");
      auto& r = rows.emplace_back();
      for (const auto& v : row) r.push_back(json_number(v).to_double());
    }
  } else {
    // CSV; rows end at a newline or ';'.
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
      std::istringstream rows_in(line);
      std::string chunk;
      while (std::getline(rows_in, chunk, ';')) {
        if (chunk.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto& r = rows.emplace_back();
        std::istringstream cells(chunk);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
          const auto b = cell.find_first_not_of(" \t\r");
          const auto e = cell.find_last_not_of(" \t\r");
          if (b == std::string::npos) throw UsageError(what + ": empty CSV cell");
          r.push_back(parse_number(cell.substr(b, e - b + 1)).to_double());
        }
      }
    }
  }
  if (rows.empty() || rows[0].empty()) throw UsageError(what + " is empty");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw UsageError(what + " has rows of different lengths");
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return m;
}

struct LowrankArgs {
  std::string u;
  std::string v;
  std::size_t r = 1;
  bool symmetric = false;
};

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    a.push_back(row);
  }
  return a;
}

int cmd_lowrank(const LowrankArgs& a, const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(kLowrankTol);
  const Matrix u = parse_matrix(a.u, "U");
  const Matrix v = a.v.empty() ? eckart_young_truncate(u, a.r) : parse_matrix(a.v, "V");
  const CellMembership c =
      a.symmetric ? symmetric_frobenius_membership(v, u, tol, a.r) : cell_membership(u, v, a.r, tol);

  Json j = header("lowrank");
  j["shape"] = {u.rows(), u.cols()};
  j["r"] = a.r;
  j["symmetric"] = a.symmetric;
  j["tol"] = tol;
  j["verdict"] = to_string(c.verdict);
  j["radius"] = c.radius;
  j["free_norm"] = c.free_norm;
  j["fixed_deviation"] = c.fixed_deviation;
  j["free_block"] = matrix_json(c.free_block);
  const auto small = static_cast<std::int64_t>(std::min(u.rows(), u.cols()));
  const auto big = static_cast<std::int64_t>(std::max(u.rows(), u.cols()));
  const auto r = static_cast<std::int64_t>(a.r);
  j["voronoi_degree"] = !a.symmetric && r < small ? Json(lowrank_voronoi_degree(small, big, r)) : Json(nullptr);
  emit(j, cfg, out);
  switch (c.verdict) {
    case Membership::Inside:
      return kExitOk;
    case Membership::Outside:
      return kExitNonMember;
    case Membership::Boundary:
      return kExitInconclusive;
  }
  return kExitError;
}

// sdp-member

struct SdpArgs {
  std::string ideal_path;
  std::string y;
  std::string u;
  unsigned level = 1;
};

int cmd_sdp(const SdpArgs& a, const RunConfig& cfg, std::ostream& out) {
  const IdealFile file = read_ideal_file(a.ideal_path);
  if (file.ring->field().is_prime()) throw UsageError("sdp-member needs an ideal over Q");
  const IdealSpec<Rational> ideal = build_ideal<Rational>(file);
  const std::vector<double> y = to_doubles(parse_point(a.y));
  const std::vector<double> u = to_doubles(parse_point(a.u));
  if (y.size() != file.ring->nvars() || u.size() != file.ring->nvars()) {
    throw UsageError("points must have " + std::to_string(file.ring->nvars()) + " coordinates");
  }
  const SdpMembership m = leveld_membership(ideal.gens(), y, u, a.level, cfg.tol.value_or(kSdpTol));

  Json j = header("sdp-member");
  j["level"] = a.level;
  j["status"] = to_string(m.status);
  j["margin"] = finite_or_null(-m.lmi.phi);
  j["iterations"] = m.lmi.iterations;
  if (m.status == SdpStatus::Member) {
    Json l = Json::array();
    for (Eigen::Index i = 0; i < m.lmi.lambda.size(); ++i) l.push_back(m.lmi.lambda[i]);
    j["lambda"] = l;
  }
  emit(j, cfg, out);
  switch (m.status) {
    case SdpStatus::Member:
      return kExitOk;
    case SdpStatus::NonMember:
      return kExitNonMember;
    case SdpStatus::Inconclusive:
      return kExitInconclusive;
  }
  return kExitError;
}

// contour

struct ContourArgs {
  std::string poly;
  std::string vars = "u1,u2";
  std::string window = "-1,1,-1,1";
  std::size_t resolution = 200;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) {
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : part.substr(b, e - b + 1));
  }
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0 ? 0.0 : x);
  return buf;
}

int cmd_contour(const ContourArgs& a, const RunConfig& cfg, std::ostream& out) {
  const std::vector<std::string> names = split(a.vars, ',');
  if (names.size() != 2) throw UsageError("contour needs exactly two variables, got '" + a.vars + "'");
  const RingPtr ring = Ring::make(names, Field::rationals());
  const auto f = parse_polynomial<Rational>(file_or_literal(a.poly), ring);
  const std::vector<std::string> w = split(a.window, ',');
  if (w.size() != 4) throw UsageError("window is a_min,a_max,b_min,b_max");
  std::vector<Rational> box;
  for (const auto& s : w) box.push_back(parse_number(s));
  if (!(box[0] < box[1]) || !(box[2] < box[3])) throw UsageError("window bounds must increase");
  if (a.resolution < 2) throw UsageError("resolution must be at least 2");

  const Rational steps(static_cast<long>(a.resolution - 1));
  std::string csv = "u_a,u_b,sign\n";
  std::vector<Rational> point(2);
  std::vector<double> row(a.resolution);
  for (std::size_t jb = 0; jb < a.resolution; ++jb) {
    point[1] = box[2] + (box[3] - box[2]) * Rational(static_cast<long>(jb)) / steps;
    double scale = 0;
    for (std::size_t ia = 0; ia < a.resolution; ++ia) {
      point[0] = box[0] + (box[1] - box[0]) * Rational(static_cast<long>(ia)) / steps;
      row[ia] = f.evaluate(point).to_double();
      scale = std::max(scale, std::abs(row[ia]));
    }
    const double cut = 1e-12 * scale;
    const std::string b = fmt(point[1].to_double());
    for (std::size_t ia = 0; ia < a.resolution; ++ia) {
      const double ua = (box[0] + (box[1] - box[0]) * Rational(static_cast<long>(ia)) / steps).to_double();
      const int sign = std::abs(row[ia]) <= cut ? 0 : (row[ia] > 0 ? 1 : -1);
      csv += fmt(ua) + "," + b + "," + std::to_string(sign) + "\n";
    }
  }
  emit(csv, cfg, out);
  return kExitOk;
}

}  // namespace

bool degree_whitelisted(unsigned n, unsigned d, bool homogeneous) {
  if (d < 2) return false;
  if (homogeneous) return (n == 2 && d <= 4) || (n == 3 && d <= 3);
  return (n == 1 && d <= 6) || (n == 2 && d <= 4) || (n == 3 && d <= 3);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Voronoi cells of algebraic varieties"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
  };

  VoronoiArgs va;
  auto* vor = app.add_subcommand("voronoi", "Voronoi ideal of an ideal at a point");
  vor->add_option("ideal", va.ideal_path, "Ideal JSON file {vars, field, gens, codim?}")->required();
  vor->add_option("-y,--point", va.point, "Point as a JSON array of rationals, or a file holding one")->required();
  vor->add_option("--codim", va.codim, "Codimension, when the file does not declare it");
  vor->add_flag("--allow-singular", va.allow_singular, "Accept a singular point");
  vor->add_option("--strategy", va.strategy, "sliced or direct")->check(CLI::IsMember({"sliced", "direct"}));
  vor->add_option("--budget", cfg.budget, "S-pair reduction cap (overrides VORONOI_BUDGET)");
  vor->add_flag("--timings", cfg.timings, "Include stage timings");
  common(vor);

  DegreeArgs da;
  auto* deg = app.add_subcommand("degree", "Voronoi degree of a random hypersurface over F_p");
  deg->add_option("-n", da.n, "Ambient dimension")->required();
  deg->add_option("-d", da.d, "Degree of the hypersurface")->required();
  deg->add_flag("--homogeneous", da.homogeneous, "Use a homogeneous form");
  deg->add_option("--seed", cfg.seed, "Random seed");
  deg->add_option("--prime", cfg.prime, "32003 or 65537")->check(CLI::IsMember({32003u, 65537u}));
  deg->add_flag("--formula", da.formula, "Also print the conjectured value");
  deg->add_flag("--force", da.force, "Run sizes outside the whitelist");
  deg->add_option("--budget", cfg.budget, "S-pair reduction cap (overrides VORONOI_BUDGET)");
  deg->add_flag("--timings", cfg.timings, "Include the total runtime");
  common(deg);

  FormulaArgs fa;
  auto* form = app.add_subcommand("formula", "Closed-form Voronoi degrees");
  form->add_option("kind", fa.kind, "hypersurface, curve, plane-curve, surface, cone, lowrank or table")
      ->required()
      ->check(CLI::IsMember({"hypersurface", "curve", "plane-curve", "surface", "cone", "lowrank", "table"}));
  form->add_option("-n", fa.n, "Ambient dimension, or columns for lowrank");
  form->add_option("-d", fa.d, "Degree");
  form->add_option("-g", fa.g, "Genus of the curve or of a hyperplane section");
  form->add_option("--chi", fa.chi, "Topological Euler characteristic of the surface");
  form->add_option("--g2", fa.g2, "Sectional genus of the surface");
  form->add_option("-m", fa.m, "Rows, for lowrank");
  form->add_option("-r", fa.r, "Rank, for lowrank");
  form->add_flag("--homogeneous", fa.homogeneous, "Homogeneous hypersurfaces");
  common(form);

  LowrankArgs la;
  auto* low = app.add_subcommand("lowrank", "Voronoi cell membership on a low-rank matrix variety");
  low->add_option("-u,--u", la.u, "Matrix U: CSV or JSON nested arrays, inline or a file")->required();
  low->add_option("-v,--v", la.v, "Matrix V of rank r; defaults to the truncation of U");
  low->add_option("-r,--rank", la.r, "Rank r")->required();
  low->add_flag("--symmetric", la.symmetric, "Symmetric matrices with the Frobenius norm");
  low->add_option("--tol", cfg.tol, "Tolerance on singular values");
  common(low);

  SdpArgs sa;
  auto* sdp = app.add_subcommand("sdp-member", "Membership in the level-d spectrahedral approximation");
  sdp->add_option("ideal", sa.ideal_path, "Ideal JSON file over Q")->required();
  sdp->add_option("-y,--point", sa.y, "Point of the variety as a JSON array")->required();
  sdp->add_option("-u,--u", sa.u, "Query point as a JSON array")->required();
  sdp->add_option("-d,--level", sa.level, "Relaxation level")->check(CLI::PositiveNumber);
  sdp->add_option("--tol", cfg.tol, "Tolerance on lambda_max");
  common(sdp);

  ContourArgs ca;
  auto* con = app.add_subcommand("contour", "Sign grid of a bivariate polynomial as CSV");
  con->add_option("poly", ca.poly, "Polynomial text, or a file holding it")->required();
  con->add_option("--vars", ca.vars, "The two variables, comma separated");
  con->add_option("--window", ca.window, "a_min,a_max,b_min,b_max");
  con->add_option("--resolution", ca.resolution, "Grid points per axis");
  common(con);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (vor->parsed()) {
      cfg.subcommand = "voronoi";
      return cmd_voronoi(va, cfg, out);
    }
    if (deg->parsed()) {
      cfg.subcommand = "degree";
      return cmd_degree(da, cfg, out, err);
    }
    if (form->parsed()) {
      cfg.subcommand = "formula";
      return cmd_formula(fa, cfg, out);
    }
    if (low->parsed()) {
      cfg.subcommand = "lowrank";
      return cmd_lowrank(la, cfg, out);
    }
    if (sdp->parsed()) {
      cfg.subcommand = "sdp-member";
      return cmd_sdp(sa, cfg, out);
    }
    if (con->parsed()) {
      cfg.subcommand = "contour";
      return cmd_contour(ca, cfg, out);
    }
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace vorcell::cli
