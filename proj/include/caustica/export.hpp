#pragma once
//
// Text writers: OBJ and ASCII PLY for meshes, CSV for polylines, and JSON
// reports under the "caustica/1" schema. Floats go out with 17 significant
// digits and negative zero is written as 0, so output is byte-stable.
//

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "caustica/classifier.hpp"
#include "caustica/mesh.hpp"

namespace caustica {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "caustica/1";

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

inline std::string to_obj(const Mesh& m) {
  std::string s;
  for (const SpacePoint& v : m.vertices)
    s += "v " + format_double(v.x) + ' ' + format_double(v.y) + ' ' + format_double(v.z) + '\n';
  for (const auto& t : m.triangles)
    s += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' + std::to_string(t[2] + 1) + '\n';
  return s;
}

inline std::string to_ply(const Mesh& m) {
  std::string s = "ply\nformat ascii 1.0\n";
  s += "element vertex " + std::to_string(m.vertices.size()) + '\n';
  s += "property double x\nproperty double y\nproperty double z\n";
  s += "element face " + std::to_string(m.triangles.size()) + '\n';
  s += "property list uchar int vertex_indices\nend_header\n";
  for (const SpacePoint& v : m.vertices)
    s += format_double(v.x) + ' ' + format_double(v.y) + ' ' + format_double(v.z) + '\n';
  for (const auto& t : m.triangles)
    s += "3 " + std::to_string(t[0]) + ' ' + std::to_string(t[1]) + ' ' + std::to_string(t[2]) + '\n';
  return s;
}

/// `curve_id,t,x,y,z` rows; a blank line separates segments so that a gap
/// in the domain or a change of sign copy is never drawn as a chord.
inline std::string to_csv(const std::vector<Polyline>& lines) {
  std::string s = "curve_id,t,x,y,z\n";
  bool first = true;
  for (const Polyline& pl : lines)
    for (const PolylineSegment& seg : pl.segments) {
      if (!first) s += '\n';
      first = false;
      for (std::size_t k = 0; k < seg.points.size(); ++k) {
        const SpacePoint& q = seg.points[k];
        s += std::string(to_string(pl.curve)) + ',' + format_double(seg.t[k]) + ',' + format_double(q.x) + ',' +
             format_double(q.y) + ',' + format_double(q.z) + '\n';
      }
    }
  return s;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline double jnum(double v) { return v + 0.0; }

}  // namespace detail

inline Json to_json(const SpacePoint& q) { return Json::array({detail::jnum(q.x), detail::jnum(q.y), detail::jnum(q.z)}); }

inline Json to_json(const Paraboloid& p) { return Json{{"a", p.a()}, {"b", p.b()}}; }

/// Envelope shared by every report: schema, kind and the paraboloid.
inline Json report(const std::string& kind, const Paraboloid& p) {
  return Json{{"schema", kSchema}, {"kind", kind}, {"paraboloid", to_json(p)}};
}

inline Json to_json(const NormalBundle& nb) {
  Json j;
  j["query"] = to_json(nb.query);
  j["count"] = nb.count();
  j["pattern"] = nb.pattern;
  j["on_boundary"] = nb.on_boundary();
  Json feet = Json::array();
  for (const Foot& f : nb.details)
    feet.push_back(Json{{"point", to_json(f.point)}, {"t", detail::jnum(f.t)}, {"multiplicity", f.multiplicity},
                        {"off_plane", f.off_plane}});
  j["feet"] = feet;
  return j;
}

inline Json to_json(const PointClassification& pc) {
  Json j{{"count", pc.count}, {"location", to_string(pc.location)}, {"pattern", pc.pattern}};
  if (!pc.label.empty()) j["label"] = pc.label;
  j["double_root_sheets"] = pc.double_root_sheets;
  j["boundary"] = pc.boundary;
  if (pc.geometric_count >= 0) j["geometric_count"] = pc.geometric_count;
  if (!pc.note.empty()) j["note"] = pc.note;
  return j;
}

inline Json to_json(const CensusReport& r) {
  Json regions = Json::array();
  for (const CensusRegion& g : r.regions)
    regions.push_back(Json{{"count", g.count}, {"cells", g.cells}, {"sample", {detail::jnum(g.x), detail::jnum(g.y)}}});
  Json by_count = Json::object();
  for (const auto& [k, v] : r.regions_by_count) by_count[std::to_string(k)] = v;
  return Json{{"samples", r.samples},
              {"grid", {r.nx, r.ny}},
              {"extent", {r.x_max, r.y_max}},
              {"seed", r.seed},
              {"masked", r.masked},
              {"disagreements", r.disagreements},
              {"region_count", r.regions.size()},
              {"regions_by_count", by_count},
              {"regions", regions}};
}

inline Json to_json(const std::vector<NamedPoint>& pts) {
  Json out = Json::array();
  for (const NamedPoint& np : pts) {
    Json j{{"label", np.label}, {"status", to_string(np.status)}};
    j["position"] = np.position ? to_json(*np.position) : Json(nullptr);
    out.push_back(j);
  }
  return out;
}

inline Json to_json(const CaseClass& c) {
  return Json{{"case", to_string(c.id)}, {"near_2a", c.near_2a}, {"near_3a", c.near_3a}};
}

inline Json to_json(const OracleResult& r) {
  Json feet = Json::array();
  for (const SpacePoint& f : r.feet) feet.push_back(to_json(f));
  return Json{{"count", r.count},
              {"grid", r.grid},
              {"min_gradient_norm", r.min_gradient_norm},
              {"max_residual", r.max_residual},
              {"feet", feet}};
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + '\n'; }

}  // namespace caustica
