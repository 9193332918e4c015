#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "caustica/caustica.hpp"

namespace caustica::cli {
namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Options {
  // global
  std::string config;
  std::string out_dir;
  double tol = 0.0;
  bool strict = false;
  bool json = false;
  // shared by subcommands
  double a = kUnset, b = kUnset;
  std::vector<double> point;
  std::vector<double> xy;
  int samples = 20000;
  std::uint64_t seed = 42;
  int sheet = 1;
  int n = 0;
  double u_max = 0.0;
  double clip = 0.0;
  std::string id = "8";
  std::string format;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

std::string point_text(const SpacePoint& q) { return "(" + num(q.x) + ", " + num(q.y) + ", " + num(q.z) + ")"; }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int k : v) s += (s.empty() ? "" : " ") + std::to_string(k);
  return s;
}

class Runner {
 public:
  Runner(Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  Paraboloid paraboloid() const {
    if (std::isnan(o_.a)) throw InvalidArgument("missing --a");
    if (std::isnan(o_.b)) throw InvalidArgument("missing --b");
    return Paraboloid(o_.a, o_.b);
  }

  SpacePoint query() const {
    if (o_.point.size() != 3) throw InvalidArgument("--point needs l,m,n");
    return {o_.point[0], o_.point[1], o_.point[2]};
  }

  // Writes the report to <out>/<name> when --out is set, and to stdout as
  // JSON under --json.
  void emit(const Json& j, const std::string& name, const std::string& text) {
    if (!o_.out_dir.empty()) write_file(std::filesystem::path(o_.out_dir) / name, dump(j));
    out_ << (o_.json ? dump(j) : text);
  }

  int boundary_exit(bool boundary) const { return boundary && o_.strict ? kExitBoundary : kExitOk; }

  int normals() {
    const Paraboloid p = paraboloid();
    const SpacePoint A = query();
    NormalsOptions opt;
    if (o_.tol > 0.0) opt.root_tol = o_.tol;
    Json j = report("normals", p);
    try {
      const NormalBundle nb = concurrent_normals(p, A, opt);
      j.update(to_json(nb));
      std::string text = "count " + std::to_string(nb.count()) + "\npattern " + join(nb.pattern) + "\n";
      for (const Foot& f : nb.details)
        text += "foot " + point_text(f.point) + " t=" + num(f.t) + " multiplicity " + std::to_string(f.multiplicity) + "\n";
      emit(j, "normals.json", text);
      return kExitOk;
    } catch (const IllConditioned& e) {
      err_ << "ill-conditioned: " << e.what() << "\n";
      if (o_.strict) return kExitBoundary;
      const OracleResult r = count_from_scan(p, A);
      j["query"] = to_json(A);
      j["ill_conditioned"] = true;
      j["oracle"] = to_json(r);
      emit(j, "normals.json", "count " + std::to_string(r.count) + " (oracle)\n");
      return kExitOk;
    }
  }

  std::string classification_text(const PointClassification& c) {
    std::string s = "count " + std::to_string(c.count) + "\nlocation " + to_string(c.location) + "\n";
    if (!c.label.empty()) s += "label " + c.label + "\n";
    s += "pattern " + join(c.pattern) + "\n";
    if (c.geometric_count >= 0) s += "geometric_count " + std::to_string(c.geometric_count) + "\n";
    if (c.boundary) s += "boundary yes\n";
    return s;
  }

  int classify() {
    const Paraboloid p = paraboloid();
    const PointClassification c = classify_point(p, query(), o_.tol > 0.0 ? o_.tol : 1e-7);
    Json j = report("classify", p);
    j["query"] = to_json(query());
    j.update(to_json(c));
    emit(j, "classify.json", classification_text(c));
    return boundary_exit(c.boundary);
  }

  int on_surface() {
    const Paraboloid p = paraboloid();
    if (o_.xy.size() != 2) throw InvalidArgument("--xy needs x,y");
    const PointClassification c = classify_on_surface(p, o_.xy[0], o_.xy[1], o_.tol > 0.0 ? o_.tol : 1e-7);
    Json j = report("on-surface", p);
    j["point"] = to_json(surface_point(p, o_.xy[0], o_.xy[1]));
    j.update(to_json(c));
    emit(j, "on_surface.json", classification_text(c));
    return boundary_exit(c.boundary);
  }

  int census() {
    const Paraboloid p = paraboloid();
    const CensusReport r = region_census(p, o_.samples, o_.seed);
    Json j = report("census", p);
    j["case"] = to_string(case_of(p).id);
    j.update(to_json(r));
    std::string text = "regions " + std::to_string(r.regions.size()) + "\n";
    for (const auto& [count, k] : r.regions_by_count)
      text += "count " + std::to_string(count) + ": " + std::to_string(k) + " region(s)\n";
    text += "disagreements " + std::to_string(r.disagreements) + "\n";
    emit(j, "census.json", text);
    return kExitOk;
  }

  int caustic_mesh() {
    const Paraboloid p = paraboloid();
    const int n = o_.n > 0 ? o_.n : 64;
    const double u_max = o_.u_max > 0.0 ? o_.u_max : default_u_max(p);
    const Mesh m = tessellate_caustic(p, o_.sheet, u_max, n);
    const std::string fmt = o_.format.empty() ? (o_.out_dir.empty() ? "obj" : "both") : o_.format;
    if (o_.out_dir.empty()) {
      if (fmt == "both") throw InvalidArgument("--format both needs --out");
      out_ << (fmt == "ply" ? to_ply(m) : to_obj(m));
      return kExitOk;
    }
    const std::filesystem::path dir(o_.out_dir);
    const std::string stem = "caustic_sheet" + std::to_string(o_.sheet);
    if (fmt != "ply") write_file(dir / (stem + ".obj"), to_obj(m));
    if (fmt != "obj") write_file(dir / (stem + ".ply"), to_ply(m));
    out_ << "sheet " << o_.sheet << ": " << m.vertices.size() << " vertices, " << m.triangles.size() << " triangles\n";
    return kExitOk;
  }

  int curves() {
    const Paraboloid p = paraboloid();
    const CurveId id = curve_id_from_string(o_.id);
    SampleOptions opt;
    opt.clip_radius = o_.clip;
    const Polyline pl = sample_curve(p, id, o_.n > 0 ? o_.n : 16, opt);
    const std::string csv = to_csv({pl});
    if (o_.out_dir.empty()) {
      out_ << csv;
      return kExitOk;
    }
    write_file(std::filesystem::path(o_.out_dir) / ("curve_" + o_.id + ".csv"), csv);
    out_ << "curve " << o_.id << ": " << pl.segments.size() << " segments, " << pl.size() << " points\n";
    return kExitOk;
  }

  int points() {
    const Paraboloid p = paraboloid();
    const auto pts = special_points(p);
    Json j = report("points", p);
    j["points"] = to_json(pts);
    std::string text;
    for (const NamedPoint& np : pts)
      text += np.label + " " + to_string(np.status) + (np.position ? " " + point_text(*np.position) : "") + "\n";
    emit(j, "points.json", text);
    return kExitOk;
  }

  int verify() {
    const Paraboloid p = paraboloid();
    const SpacePoint A = query();
    Json j = report("verify", p);
    j["query"] = to_json(A);
    int solver = -1;
    try {
      solver = concurrent_normals(p, A).count();
    } catch (const IllConditioned& e) {
      j["solver_error"] = e.what();
    }
    int oracle = -1;
    try {
      const OracleResult r = count_from_scan(p, A);
      oracle = r.count;
      j["oracle"] = to_json(r);
    } catch (const Unstable& e) {
      j["oracle_error"] = e.what();
    }
    const bool agree = solver >= 0 && solver == oracle;
    j["solver_count"] = solver;
    j["oracle_count"] = oracle;
    j["agree"] = agree;
    emit(j, "verify.json",
         "solver " + std::to_string(solver) + "\noracle " + std::to_string(oracle) + "\n" + (agree ? "agree\n" : "DISAGREE\n"));
    return boundary_exit(!agree);
  }

  int parabola() {
    if (std::isnan(o_.a)) throw InvalidArgument("missing --a");
    if (o_.point.size() != 2) throw InvalidArgument("--point needs l,m");
    const parabola2d::Parabola2 par(o_.a);
    const parabola2d::PlanePoint A(o_.point[0], o_.point[1]);
    const parabola2d::CubicSolution s = parabola2d::normal_feet_2d(par, A);
    const char* side = s.on_boundary ? "on" : s.discriminant > 0.0 ? "above" : "below";
    Json feet = Json::array();
    std::string text = "count " + std::to_string(s.roots.size()) + "\nneile " + side + "\n";
    for (const Root& r : s.roots.roots) {
      feet.push_back(Json{{"x", r.value + 0.0}, {"y", par.height(r.value)}, {"multiplicity", r.multiplicity}});
      text += "foot (" + num(r.value) + ", " + num(par.height(r.value)) + ") multiplicity " + std::to_string(r.multiplicity) + "\n";
    }
    Json j{{"schema", kSchema}, {"kind", "parabola2d"}, {"parabola", {{"a", o_.a}}}};
    j["query"] = {A.x, A.y};
    j["count"] = s.roots.size();
    j["neile"] = side;
    j["neile_residual"] = parabola2d::neile_residual(par, A);
    j["feet"] = feet;
    emit(j, "parabola2d.json", text);
    return boundary_exit(s.on_boundary);
  }

  int case_cmd() {
    const Paraboloid p = paraboloid();
    const CaseClass c = case_of(p, o_.tol > 0.0 ? o_.tol : 1e-9);
    Json j = report("case", p);
    j.update(to_json(c));
    std::string text = std::string(to_string(c.id)) + "\n";
    if (c.near_2a) text += "boundary b = 2a\n";
    if (c.near_3a) text += "boundary b = 3a\n";
    emit(j, "case.json", text);
    return kExitOk;
  }

 private:
  Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

// Config keys become flags of the selected subcommand unless the command
// line already sets them. Keys naming no option anywhere are rejected; keys
// for other subcommands are ignored, so one file can serve several runs.
std::vector<std::string> merge_config(CLI::App& app, const std::vector<std::string>& args) {
  std::string path;
  CLI::App* sub = nullptr;
  std::set<std::string> given;
  std::size_t sub_pos = args.size();
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& s = args[k];
    if (s == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (s.rfind("--config=", 0) == 0) path = s.substr(9);
    if (s.rfind("--", 0) == 0) given.insert(s.substr(2, s.find('=') == std::string::npos ? std::string::npos : s.find('=') - 2));
    if (!sub) {
      for (CLI::App* c : app.get_subcommands({}))
        if (c->get_name() == s) sub = c, sub_pos = k;
    }
  }
  if (path.empty()) return args;
  const RunConfig cfg = load_config(path);

  std::set<std::string> known;
  auto collect = [&](const CLI::App* a) {
    for (const CLI::Option* opt : a->get_options())
      for (const std::string& name : opt->get_lnames()) known.insert(name);
  };
  collect(&app);
  for (const CLI::App* c : app.get_subcommands({})) collect(c);
  known.erase("config");
  known.erase("help");
  require_known_keys(cfg, known);

  std::vector<std::string> extra;
  for (const auto& [key, value] : cfg.values) {
    if (given.count(key)) continue;
    const CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
    if (!opt) opt = app.get_option_no_throw("--" + key);
    if (!opt) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") extra.push_back("--" + key);
      else if (value != "false" && value != "0")
        throw ConfigError(cfg.source + ": flag '" + key + "' needs true or false, got '" + value + "'");
    } else {
      extra.push_back("--" + key + "=" + value);
    }
  }
  std::vector<std::string> merged(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(std::min(sub_pos + 1, args.size())));
  merged.insert(merged.end(), extra.begin(), extra.end());
  if (sub_pos + 1 < args.size()) merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos + 1), args.end());
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Concurrent normals of the elliptic paraboloid z = (a x^2 + b y^2) / 2", "caustica"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", o.config, "flat key = value file; command-line flags win");
  app.add_option("--out", o.out_dir, "directory for output files");
  app.add_option("--tol", o.tol, "tolerance override (classifier epsilon, root tolerance)")->check(CLI::PositiveNumber);
  app.add_flag("--strict", o.strict, "exit 3 on boundary-band results");
  app.add_flag("--json", o.json, "print JSON reports");

  auto ab = [&](CLI::App* s) {
    s->add_option("--a", o.a, "curvature a, 0 < a < b");
    s->add_option("--b", o.b, "curvature b");
  };
  auto point3 = [&](CLI::App* s) { s->add_option("--point", o.point, "query l,m,n")->delimiter(',')->expected(3); };

  Runner r(o, out, err);
  std::map<CLI::App*, std::function<int()>> handlers;
  auto sub = [&](const char* name, const char* help, std::function<int()> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = std::move(fn);
    return s;
  };

  CLI::App* s = sub("normals", "feet of the normals through a point", [&] { return r.normals(); });
  ab(s), point3(s);
  s = sub("classify", "normal count and location of a point", [&] { return r.classify(); });
  ab(s), point3(s);
  s = sub("on-surface", "classify a point of the paraboloid", [&] { return r.on_surface(); });
  ab(s);
  s->add_option("--xy", o.xy, "x,y")->delimiter(',')->expected(2);
  s = sub("census", "count the regions of the paraboloid", [&] { return r.census(); });
  ab(s);
  s->add_option("--samples", o.samples, "first-quadrant samples")->check(CLI::PositiveNumber);
  s->add_option("--seed", o.seed, "jitter seed");
  s = sub("caustic-mesh", "triangulate a caustic sheet", [&] { return r.caustic_mesh(); });
  ab(s);
  s->add_option("--sheet", o.sheet, "1 or 2")->check(CLI::IsMember({1, 2}));
  s->add_option("--n", o.n, "cells per quadrant side (default 64)")->check(CLI::Range(2, 4096));
  s->add_option("--u-max", o.u_max, "upper u (default 4/a + 1/b)");
  s->add_option("--format", o.format, "obj, ply or both")->check(CLI::IsMember({"obj", "ply", "both"}));
  s = sub("curves", "sample a curve as CSV", [&] { return r.curves(); });
  ab(s);
  s->add_option("--id", o.id, "8, 9, nodal, nodal-uv, 14..19")
      ->check(CLI::IsMember({"8", "9", "nodal", "nodal-uv", "14", "15", "16", "17", "18", "19"}));
  s->add_option("--n", o.n, "initial intervals per piece (default 16)")->check(CLI::Range(2, 100000));
  s->add_option("--clip", o.clip, "clip radius for unbounded pieces (default 12/a)");
  s = sub("points", "special points and their status", [&] { return r.points(); });
  ab(s);
  s = sub("verify", "compare solver and brute-force counts", [&] { return r.verify(); });
  ab(s), point3(s);
  s = sub("parabola2d", "normals of the plane parabola y = a x^2 / 2", [&] { return r.parabola(); });
  s->add_option("--a", o.a, "curvature a > 0");
  s->add_option("--point", o.point, "query l,m")->delimiter(',')->expected(2);
  s = sub("case", "which of the four cases (a, b) falls in", [&] { return r.case_cmd(); });
  ab(s);

  try {
    std::vector<std::string> merged = merge_config(app, args);
    std::reverse(merged.begin(), merged.end());
    app.parse(merged);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    for (CLI::App* c : app.get_subcommands())
      if (handlers.count(c)) return handlers[c]();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Unstable& e) {
    err << "unstable: " << e.what() << "\n";
    return kExitBoundary;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace caustica::cli
