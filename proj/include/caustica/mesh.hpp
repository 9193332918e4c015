#pragma once
//
// Triangle meshes of the paraboloid and the caustic sheets, and sampled
// polylines of the named curves.
//

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "caustica/caustic.hpp"

namespace caustica {

struct Mesh {
  std::vector<SpacePoint> vertices;
  std::vector<std::array<int, 3>> triangles;  ///< 0-based vertex indices
  std::vector<int> sheet;                     ///< per vertex; 0 for the paraboloid
  std::vector<std::array<double, 2>> uv;      ///< per vertex; (x, y) for the paraboloid
  int patches = 0;
};

namespace detail {

// Merges vertices closer than `radius` (max norm) through a hash of
// radius-sized cells, checking the 27 neighboring cells.
class VertexWelder {
 public:
  VertexWelder(Mesh& mesh, double radius) : mesh_(mesh), radius_(radius) {}

  int add(SpacePoint q, int sheet, double u, double v) {
    q = {q.x + 0.0, q.y + 0.0, q.z + 0.0};  // -0 -> 0
    const std::array<std::int64_t, 3> c = cell(q);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = cells_.find(key({c[0] + dx, c[1] + dy, c[2] + dz}));
          if (it == cells_.end()) continue;
          for (int k : it->second) {
            const SpacePoint& o = mesh_.vertices[static_cast<std::size_t>(k)];
            if (std::abs(o.x - q.x) <= radius_ && std::abs(o.y - q.y) <= radius_ && std::abs(o.z - q.z) <= radius_)
              return k;
          }
        }
    const int idx = static_cast<int>(mesh_.vertices.size());
    mesh_.vertices.push_back(q);
    mesh_.sheet.push_back(sheet);
    mesh_.uv.push_back({u, v});
    cells_[key(c)].push_back(idx);
    return idx;
  }

 private:
  std::array<std::int64_t, 3> cell(const SpacePoint& q) const {
    return {static_cast<std::int64_t>(std::floor(q.x / radius_)), static_cast<std::int64_t>(std::floor(q.y / radius_)),
            static_cast<std::int64_t>(std::floor(q.z / radius_))};
  }
  static std::uint64_t key(const std::array<std::int64_t, 3>& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : c) h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
    return h;
  }

  Mesh& mesh_;
  double radius_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

inline double triangle_area(const SpacePoint& a, const SpacePoint& b, const SpacePoint& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

// Adds the two triangles of every grid cell. `idx` maps grid nodes to
// welded vertices; `flip` reverses the winding for mirrored patches so all
// patches face the same way.
inline void add_grid_triangles(Mesh& mesh, const std::vector<int>& idx, int nu, int nv, bool flip) {
  auto at = [&](int i, int j) { return idx[static_cast<std::size_t>(j) * (nu + 1) + i]; };
  auto emit = [&](int i0, int i1, int i2) {
    if (i0 == i1 || i1 == i2 || i0 == i2) return;
    const auto& V = mesh.vertices;
    if (triangle_area(V[i0], V[i1], V[i2]) <= 1e-14) return;
    mesh.triangles.push_back(flip ? std::array<int, 3>{i0, i2, i1} : std::array<int, 3>{i0, i1, i2});
  };
  for (int j = 0; j < nv; ++j)
    for (int i = 0; i < nu; ++i) {
      emit(at(i, j), at(i + 1, j), at(i + 1, j + 1));
      emit(at(i, j), at(i + 1, j + 1), at(i, j + 1));
    }
}

constexpr std::array<std::array<Sign, 2>, 4> kQuadrants{{{Sign::plus, Sign::plus},
                                                         {Sign::minus, Sign::plus},
                                                         {Sign::minus, Sign::minus},
                                                         {Sign::plus, Sign::minus}}};

}  // namespace detail

/// The paraboloid over [-x_max, x_max]^2 as four quadrant patches of
/// n x n cells, welded along the coordinate planes.
inline Mesh tessellate_paraboloid(const Paraboloid& p, double x_max, int n) {
  if (n < 2) throw InvalidArgument("tessellation needs n >= 2, got " + std::to_string(n));
  detail::require_finite(x_max, "x_max");
  if (!(x_max > 0.0)) throw InvalidArgument("x_max must be positive");
  Mesh mesh;
  detail::VertexWelder weld(mesh, 1e-9);
  for (const auto& q : detail::kQuadrants) {
    std::vector<int> idx;
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const double x = apply(q[0], x_max * i / n), y = apply(q[1], x_max * j / n);
        idx.push_back(weld.add(surface_point(p, x, y), 0, x, y));
      }
    detail::add_grid_triangles(mesh, idx, n, n, (q[0] == Sign::minus) != (q[1] == Sign::minus));
    ++mesh.patches;
  }
  return mesh;
}

/// Default upper u for caustic meshes: 4/a + 1/b.
inline double default_u_max(const Paraboloid& p) { return 4.0 / p.a() + 1.0 / p.b(); }

/// One caustic sheet over u in [1/a, u_max], v in [-1/a, -1/b] with n x n
/// cells per quadrant. The rectangle's edges are where x or y vanishes:
/// u = 1/a and v = -1/a give x = 0, v = -1/b gives y = 0. Grid lines sit
/// exactly on those parameters and the vanishing coordinate is set to zero
/// there, so the cusp ridges are mesh edges and the mirrored patches weld.
inline Mesh tessellate_caustic(const Paraboloid& p, int sheet, double u_max, int n) {
  if (n < 2) throw InvalidArgument("tessellation needs n >= 2, got " + std::to_string(n));
  detail::require_sheet(sheet);
  detail::require_finite(u_max, "u_max");
  const double a = p.a(), b = p.b();
  const double u0 = 1.0 / a, v0 = -1.0 / a, v1 = -1.0 / b;
  if (!(u_max > u0)) throw DomainError("u_max must exceed 1/a = " + detail::fmt_double(u0));
  Mesh mesh;
  detail::VertexWelder weld(mesh, 1e-9);
  for (const auto& q : detail::kQuadrants) {
    std::vector<int> idx;
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const double u = i == 0 ? u0 : i == n ? u_max : u0 + (u_max - u0) * i / n;
        const double v = j == 0 ? v0 : j == n ? v1 : v0 + (v1 - v0) * j / n;
        SpacePoint s = caustic_point(p, {sheet, u, v}, q[0], q[1], 1e-9);
        if (i == 0 || j == 0) s.x = 0.0;
        if (j == n) s.y = 0.0;
        idx.push_back(weld.add(s, sheet, u, v));
      }
    detail::add_grid_triangles(mesh, idx, n, n, (q[0] == Sign::minus) != (q[1] == Sign::minus));
    ++mesh.patches;
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// Polylines

/// One unbroken run of a curve: a real-domain interval under one choice of
/// signs. Runs are never joined, so domain gaps stay explicit.
struct PolylineSegment {
  Sign sx = Sign::plus, sy = Sign::plus;
  CurveInterval interval;
  std::vector<double> t;
  std::vector<SpacePoint> points;
};

struct Polyline {
  CurveId curve = CurveId::c8;
  std::vector<PolylineSegment> segments;

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& seg : segments) s += seg.points.size();
    return s;
  }
};

struct SampleOptions {
  double clip_radius = 0.0;  ///< passed to curve_domain
  double chord_tol = 1e-6;
  double max_len = 0.05;
};

/// Adaptive samples of a curve over its real domain, starting from n
/// uniform intervals per piece, with every sign copy. Plane curves have two
/// copies, the rest four.
inline Polyline sample_curve(const Paraboloid& p, CurveId id, int n, const SampleOptions& opt = {}) {
  if (n < 2) throw InvalidArgument("sample_curve needs n >= 2, got " + std::to_string(n));
  const auto domain = curve_domain(p, id, {opt.clip_radius});
  if (domain.empty()) throw DomainError(std::string("curve ") + to_string(id) + " has no real points for these a, b");
  Polyline out;
  out.curve = id;
  std::vector<std::array<Sign, 2>> signs;
  if (is_plane_curve(id))
    signs = {{Sign::plus, Sign::plus}, {Sign::minus, Sign::minus}};
  else
    signs.assign(detail::kQuadrants.begin(), detail::kQuadrants.end());
  for (const CurveInterval& iv : domain)
    for (const auto& s : signs) {
      PolylineSegment seg;
      seg.sx = s[0];
      seg.sy = s[1];
      seg.interval = iv;
      auto f = [&](double t) { return curve_point(p, id, t, s[0], s[1]); };
      seg.t = adaptive_parameters(f, iv.lo, iv.hi, opt.chord_tol, opt.max_len, n);
      for (double t : seg.t) {
        const SpacePoint q = f(t);
        seg.points.push_back({q.x + 0.0, q.y + 0.0, q.z + 0.0});
      }
      out.segments.push_back(std::move(seg));
    }
  return out;
}

}  // namespace caustica
