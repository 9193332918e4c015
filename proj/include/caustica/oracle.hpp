#pragma once
//
// Brute-force normal counting. The feet of the normals through A are the
// critical points of the squared distance from A to the surface, taken over
// the (x, y) chart. This module uses neither the normal equation nor any
// closed-form curve, so it can referee both.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "caustica/geometry.hpp"

namespace caustica {

struct OracleResult {
  std::vector<SpacePoint> feet;  ///< sorted by (x, y)
  int count = 0;
  double min_gradient_norm = 0.0;  ///< smallest |grad| over the grid nodes
  double max_residual = 0.0;       ///< largest |grad| at a returned foot, relative to scale
  int grid = 0;
};

struct OracleOptions {
  double half_width = 0.0;  ///< 0 selects default_half_width
  double merge_radius = 1e-5;  ///< relative to scale
};

/// 4 max(|l|, |m|, sqrt(2|n|/a), 1/a). Not a proven bound on the feet.
inline double default_half_width(const Paraboloid& p, const SpacePoint& A) {
  return 4.0 * std::max({std::abs(A.x), std::abs(A.y), std::sqrt(2.0 * std::abs(A.z) / p.a()), 1.0 / p.a()});
}

namespace detail {

inline double len2(double x, double y) { return std::sqrt(x * x + y * y); }

struct Grad {
  double gx, gy;
};

// Half the gradient of |B(x, y) - A|^2.
inline Grad distance_gradient(const Paraboloid& p, const SpacePoint& A, double x, double y) {
  const double dz = p.height(x, y) - A.z;
  return {x - A.x + dz * p.a() * x, y - A.y + dz * p.b() * y};
}

// Damped Newton on the gradient; false when it stalls.
inline bool newton_critical(const Paraboloid& p, const SpacePoint& A, double& x, double& y, double tol) {
  const double a = p.a(), b = p.b();
  Grad g = distance_gradient(p, A, x, y);
  double gn = detail::len2(g.gx, g.gy);
  for (int it = 0; it < 50 && gn > tol; ++it) {
    const double dz = p.height(x, y) - A.z;
    const double jxx = 1.0 + a * dz + a * a * x * x;
    const double jyy = 1.0 + b * dz + b * b * y * y;
    const double jxy = a * b * x * y;
    const double det = jxx * jyy - jxy * jxy;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double dx = (jyy * g.gx - jxy * g.gy) / det;
    const double dy = (jxx * g.gy - jxy * g.gx) / det;
    double step = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, step *= 0.5) {
      const double nx = x - step * dx, ny = y - step * dy;
      const Grad ng = distance_gradient(p, A, nx, ny);
      const double nn = detail::len2(ng.gx, ng.gy);
      if (nn < gn) {
        x = nx, y = ny, g = ng, gn = nn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return gn <= tol;
}

inline bool straddles(double a, double b, double c, double d) {
  const double lo = std::min({a, b, c, d}), hi = std::max({a, b, c, d});
  return lo <= 0.0 && hi >= 0.0;
}

}  // namespace detail

/// Critical points of the squared distance on a resolution x resolution
/// grid over [-w, w]^2. Candidate cells are those where both gradient
/// components change sign; each is refined by damped Newton from its center.
inline OracleResult critical_points(const Paraboloid& p, const SpacePoint& A, double half_width, int resolution,
                                    const OracleOptions& opt = {}) {
  if (resolution < 2) throw InvalidArgument("oracle resolution must be at least 2");
  const double w = half_width > 0.0 ? half_width : default_half_width(p, A);
  detail::require_finite(w, "half_width");
  const int n = resolution;
  const double h = 2.0 * w / n;
  const double scale = 1.0 + std::abs(A.x) + std::abs(A.y) + std::abs(A.z);
  const double merge = opt.merge_radius * scale;
  const double tol = 1e-13 * scale * scale;

  std::vector<detail::Grad> g(static_cast<std::size_t>(n + 1) * (n + 1));
  std::vector<double> jn(g.size());  // Frobenius norm of the Jacobian
  const std::size_t stride = static_cast<std::size_t>(n) + 1;
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i); };
  OracleResult out;
  out.grid = n;
  out.min_gradient_norm = std::numeric_limits<double>::infinity();
  const double a = p.a(), b = p.b();
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double x = -w + i * h, y = -w + j * h;
      g[idx(i, j)] = detail::distance_gradient(p, A, x, y);
      const double dz = p.height(x, y) - A.z;
      const double jxx = 1.0 + a * dz + a * a * x * x, jyy = 1.0 + b * dz + b * b * y * y, jxy = a * b * x * y;
      jn[idx(i, j)] = std::sqrt(jxx * jxx + jyy * jyy + 2.0 * jxy * jxy);
      out.min_gradient_norm = std::min(out.min_gradient_norm, detail::len2(g[idx(i, j)].gx, g[idx(i, j)].gy));
    }

  // A cell is a candidate when both components change sign over its
  // corners, or when some corner gradient is small enough for a zero to fit
  // in the cell given the local Jacobian. The second test catches pairs of
  // critical points sharing one cell, where the corner signs agree.
  struct Found {
    double x, y;
  };
  std::vector<Found> found;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t c[4] = {idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1)};
      const bool sign_change = detail::straddles(g[c[0]].gx, g[c[1]].gx, g[c[2]].gx, g[c[3]].gx) &&
                               detail::straddles(g[c[0]].gy, g[c[1]].gy, g[c[2]].gy, g[c[3]].gy);
      double gmin = std::numeric_limits<double>::infinity(), jmax = 0.0;
      for (std::size_t k : c) {
        gmin = std::min(gmin, detail::len2(g[k].gx, g[k].gy));
        jmax = std::max(jmax, jn[k]);
      }
      if (!sign_change && gmin > jmax * h) continue;
      const double cx = -w + (i + 0.5) * h, cy = -w + (j + 0.5) * h;
      const double starts[5][2] = {{cx, cy}, {cx - 0.5 * h, cy - 0.5 * h}, {cx + 0.5 * h, cy - 0.5 * h},
                                   {cx - 0.5 * h, cy + 0.5 * h}, {cx + 0.5 * h, cy + 0.5 * h}};
      for (const auto& st : starts) {
        double x = st[0], y = st[1];
        if (!detail::newton_critical(p, A, x, y, tol)) continue;
        bool dup = false;
        for (const Found& f : found) {
          if (detail::len2(f.x - x, f.y - y) <= merge) {
            dup = true;
            break;
          }
        }
        if (!dup) found.push_back({x, y});
      }
    }

  std::sort(found.begin(), found.end(), [](const Found& l, const Found& r) { return l.x != r.x ? l.x < r.x : l.y < r.y; });
  for (const Found& f : found) {
    out.feet.push_back(surface_point(p, f.x, f.y));
    const detail::Grad gr = detail::distance_gradient(p, A, f.x, f.y);
    out.max_residual = std::max(out.max_residual, detail::len2(gr.gx, gr.gy) / scale);
  }
  out.count = static_cast<int>(out.feet.size());
  // Nondegenerate critical points come in odd numbers (the distance grows
  // outward at the chart boundary); an even count means a missed or
  // degenerate foot at this resolution.
  if (out.count % 2 == 0)
    throw GridTooCoarse("even critical-point count " + std::to_string(out.count) + " at resolution " + std::to_string(n));
  return out;
}

/// Escalates 64 -> 256 -> 1024 until two consecutive resolutions agree.
inline OracleResult count_from_scan(const Paraboloid& p, const SpacePoint& A, const OracleOptions& opt = {}) {
  const int levels[] = {64, 256, 1024};
  int previous = -1;
  for (int n : levels) {
    OracleResult r;
    try {
      r = critical_points(p, A, opt.half_width, n, opt);
    } catch (const GridTooCoarse&) {
      previous = -1;
      continue;
    }
    if (r.count == previous) return r;
    previous = r.count;
  }
  throw Unstable("oracle count did not stabilize up to resolution 1024 for A = (" + detail::fmt_double(A.x) + ", " +
                 detail::fmt_double(A.y) + ", " + detail::fmt_double(A.z) + ")");
}

}  // namespace caustica
