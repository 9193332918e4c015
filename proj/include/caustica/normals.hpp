#pragma once
//
// Normals of the paraboloid through a query point A = (l, m, n).
//
// A foot B lies on the curve (l / (1 + a t), m / (1 + b t), n + t); putting
// it on the surface and clearing denominators gives a quintic in t. When l
// or m vanishes the curve degenerates into a plane hyperbola plus the line
// t = -1/a (or -1/b), and the feet are found from the plane parabola's
// cubic and that line directly.
//

#include <algorithm>
#include <cmath>
#include <vector>

#include "caustica/geometry.hpp"
#include "caustica/parabola2d.hpp"
#include "caustica/polyroots.hpp"

namespace caustica {

enum class QueryKind { general, plane_x0, plane_y0, axis };

/// One distinct normal foot. `multiplicity` counts how many feet coalesce
/// there: the root multiplicity in t for a general query, and for the plane
/// cases the in-plane root multiplicity plus 2 when the off-plane pair
/// collapses onto it.
struct Foot {
  SpacePoint point;
  double t = 0.0;
  int multiplicity = 1;
  bool off_plane = false;
};

struct NormalBundle {
  SpacePoint query;
  QueryKind kind = QueryKind::general;
  RootSet roots;                            ///< parameters t with multiplicity
  std::vector<SpacePoint> feet;             ///< distinct feet B_i
  std::vector<SpacePoint> degenerate_feet;  ///< feet on the asymptote line (l = 0 or m = 0)
  std::vector<Foot> details;                ///< feet with multiplicity, same order as `feet`
  std::vector<int> pattern;                 ///< multiplicities of the feet, descending

  int count() const noexcept { return static_cast<int>(feet.size()); }
  bool on_boundary() const noexcept {
    return std::any_of(pattern.begin(), pattern.end(), [](int k) { return k >= 2; });
  }
  int multiplicity_count(int k) const noexcept {
    return static_cast<int>(std::count(pattern.begin(), pattern.end(), k));
  }
};

struct NormalsOptions {
  /// Relative backward error for multiple-root detection.
  double root_tol = 1e-12;
  /// |l| <= threshold (1 + |m| + |n|) routes to the plane branch.
  double degenerate_threshold = 1e-12;
  /// Band for the collapse of the off-plane pair, relative to the terms of x^2.
  double collapse_band = 1e-10;
};

inline bool is_degenerate_coordinate(double c, const SpacePoint& A, double threshold) {
  return std::abs(c) <= threshold * (1.0 + std::abs(A.x) + std::abs(A.y) + std::abs(A.z));
}

/// 2ab (t+n)(t+1/a)^2 (t+1/b)^2 - b l^2 (t+1/b)^2 - a m^2 (t+1/a)^2, the
/// cleared form of 2(t+n) = l^2 / (a (t+1/a)^2) + m^2 / (b (t+1/b)^2).
inline Polynomial normal_equation(const Paraboloid& p, const SpacePoint& A, double degenerate_threshold = 1e-12) {
  if (is_degenerate_coordinate(A.x, A, degenerate_threshold) || is_degenerate_coordinate(A.y, A, degenerate_threshold))
    throw DegenerateQuery("normal_equation needs l m != 0; use concurrent_normals for plane queries");
  const double a = p.a(), b = p.b(), l = A.x, m = A.y, n = A.z;
  const Polynomial ta({1.0 / a, 1.0});
  const Polynomial tb({1.0 / b, 1.0});
  const Polynomial ta2 = ta * ta;
  const Polynomial tb2 = tb * tb;
  return (2.0 * a * b) * (Polynomial({n, 1.0}) * ta2 * tb2) - (b * l * l) * tb2 - (a * m * m) * ta2;
}

namespace detail {

inline void finish_bundle(NormalBundle& nb) {
  nb.feet.clear();
  nb.pattern.clear();
  for (const Foot& f : nb.details) {
    nb.feet.push_back(f.point);
    nb.pattern.push_back(f.multiplicity);
    if (f.off_plane) nb.degenerate_feet.push_back(f.point);
  }
  std::sort(nb.pattern.begin(), nb.pattern.end(), std::greater<>());
}

inline double foot_merge_radius(const SpacePoint& q) { return 1e-7 * (1.0 + norm(q)); }

// Plane query with the in-plane coordinate `along` and off-plane coordinate
// zero. `a_in` is the curvature of the section parabola, `a_off` the other.
// Returns feet in plane-local coordinates (off, along, z).
struct PlaneFoot {
  double off;
  double along;
  double z;
  double t;
  int multiplicity;
  bool off_plane;
};

inline std::vector<PlaneFoot> plane_feet(double a_in, double a_off, double along, double n, double band,
                                         RootSet& troots) {
  using parabola2d::Parabola2;
  using parabola2d::PlanePoint;
  const parabola2d::CubicSolution sol = parabola2d::normal_feet_2d(Parabola2(a_in), PlanePoint(along, n));
  std::vector<PlaneFoot> feet;
  for (const Root& r : sol.roots.roots) {
    const double z = 0.5 * a_in * r.value * r.value;
    feet.push_back({0.0, r.value, z, z - n, r.multiplicity, false});
  }

  // Feet on the line t = -1/a_off, off the plane.
  const double t_line = -1.0 / a_off;
  const double y0 = along / (1.0 + a_in * t_line);
  const double z0 = n + t_line;
  const double x2 = (2.0 * z0 - a_in * y0 * y0) / a_off;
  const double scale = (2.0 * std::abs(z0) + a_in * y0 * y0) / a_off;
  bool line_root = false;
  if (std::abs(x2) <= band * (1.0 + scale)) {
    line_root = true;
    const double radius = 1e-7 * (1.0 + std::abs(y0) + std::abs(z0));
    auto it = std::find_if(feet.begin(), feet.end(), [&](const PlaneFoot& f) {
      return std::hypot(f.along - y0, f.z - z0) <= radius;
    });
    if (it != feet.end()) {
      it->multiplicity += 2;
      it->t = t_line;
    } else {
      feet.push_back({0.0, y0, z0, t_line, 2, true});
    }
  } else if (x2 > 0.0) {
    line_root = true;
    const double x = std::sqrt(x2);
    feet.push_back({x, y0, z0, t_line, 1, true});
    feet.push_back({-x, y0, z0, t_line, 1, true});
  }

  // t-space roots: the cubic's roots and the double root of the line.
  std::vector<Root> rs;
  for (const PlaneFoot& f : feet)
    if (!f.off_plane || f.off == 0.0) rs.push_back({f.t, f.multiplicity});
  if (line_root && std::none_of(rs.begin(), rs.end(), [&](const Root& r) { return r.value == t_line; }))
    rs.push_back({t_line, 2});
  std::sort(rs.begin(), rs.end(), [](const Root& x, const Root& y) { return x.value < y.value; });
  troots.roots = rs;
  troots.residual = sol.roots.residual;
  return feet;
}

// A root of the quintic with t + 1/a and t + 1/b kept to full relative
// precision; the feet divide by them.
struct PoleRoot {
  double t;
  int multiplicity;
  double ta;  // t + 1/a
  double tb;  // t + 1/b
};

// Near a pole the quintic in t loses its small terms (l^2 or m^2 and the
// nearly cancelling rest) to the rounding of t itself, so roots close to a
// pole are recomputed from the same equation written in s = t - t0:
//   2ab (s + n + t0) s^2 (s + e)^2 - w_self (s + e)^2 - w_other s^2,
// e = t0 - t1 with t1 the other pole. Roots there are compared relative to
// the smallest possible |s| rather than to 1. Each pole takes the roots
// within a radius between 1/4 and 3/8 of the pole gap, placed in the widest
// root-free stretch so no root sits on the seam between the two solves.
inline std::vector<PoleRoot> resolve_poles(const Paraboloid& p, const SpacePoint& A, const std::vector<Root>& roots,
                                           double tol) {
  const double a = p.a(), b = p.b(), l = A.x, m = A.y, n = A.z;
  struct Pole {
    double t0, t1, w_self, w_other;
    bool at_a;
  };
  const Pole poles[2] = {{-1.0 / a, -1.0 / b, b * l * l, a * m * m, true},
                         {-1.0 / b, -1.0 / a, a * m * m, b * l * l, false}};
  const double gap = 1.0 / a - 1.0 / b;

  std::vector<PoleRoot> out;
  double radius[2];
  std::vector<Root> local[2];
  for (int k = 0; k < 2; ++k) {
    const Pole& pole = poles[k];
    const double e = pole.t0 - pole.t1;
    const Polynomial s2({0.0, 0.0, 1.0});
    const Polynomial se2 = Polynomial({e, 1.0}) * Polynomial({e, 1.0});
    const Polynomial q = (2.0 * a * b) * (Polynomial({n + pole.t0, 1.0}) * s2 * se2) - pole.w_self * se2 -
                         pole.w_other * s2;
    // Sizes of the three products before they cancel into q's coefficients.
    const Polynomial abs_se2 = Polynomial({std::abs(e), 1.0}) * Polynomial({std::abs(e), 1.0});
    const Polynomial envelope = (2.0 * a * b) * (Polynomial({std::abs(n) + std::abs(pole.t0), 1.0}) * s2 * abs_se2) +
                                pole.w_self * abs_se2 + pole.w_other * s2;
    double rest = 0.0;
    for (int i = 1; i <= q.degree(); ++i) rest = std::max(rest, std::abs(q[i]));
    const double c0 = std::abs(q[0]);
    const double scale = c0 > 0.0 ? c0 / (c0 + rest) : 1.0;
    local[k] = detail::cascade_roots(q, tol, scale, &envelope);

    std::vector<double> marks{0.25 * gap, 0.375 * gap};
    for (const Root& r : roots) marks.push_back(std::abs(r.value - pole.t0));
    for (const Root& r : local[k]) marks.push_back(std::abs(r.value));
    std::sort(marks.begin(), marks.end());
    double best = -1.0;
    radius[k] = 0.25 * gap;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
      const double lo = std::max(marks[i], 0.25 * gap), hi = std::min(marks[i + 1], 0.375 * gap);
      if (hi - lo > best) {
        best = hi - lo;
        radius[k] = 0.5 * (lo + hi);
      }
    }
  }
  for (const Root& r : roots) {
    if (std::abs(r.value - poles[0].t0) < radius[0] || std::abs(r.value - poles[1].t0) < radius[1]) continue;
    out.push_back({r.value, r.multiplicity, r.value + 1.0 / a, r.value + 1.0 / b});
  }
  for (int k = 0; k < 2; ++k) {
    const double e = poles[k].t0 - poles[k].t1;
    for (const Root& r : local[k]) {
      if (std::abs(r.value) >= radius[k]) continue;
      const double other = r.value + e;
      out.push_back(
          {poles[k].t0 + r.value, r.multiplicity, poles[k].at_a ? r.value : other, poles[k].at_a ? other : r.value});
    }
  }
  std::sort(out.begin(), out.end(), [](const PoleRoot& x, const PoleRoot& y) { return x.t < y.t; });
  return out;
}
}  // namespace detail

inline NormalBundle concurrent_normals(const Paraboloid& p, const SpacePoint& A, const NormalsOptions& opt = {}) {
  const double a = p.a(), b = p.b();
  NormalBundle nb;
  nb.query = A;
  const bool l0 = is_degenerate_coordinate(A.x, A, opt.degenerate_threshold);
  const bool m0 = is_degenerate_coordinate(A.y, A, opt.degenerate_threshold);

  if (l0) {
    // Plane x = 0: section parabola z = b y^2 / 2, off-plane line t = -1/a.
    nb.kind = m0 ? QueryKind::axis : QueryKind::plane_x0;
    const auto feet = detail::plane_feet(b, a, A.y, A.z, opt.collapse_band, nb.roots);
    for (const auto& f : feet) nb.details.push_back({SpacePoint(f.off, f.along, f.z), f.t, f.multiplicity, f.off_plane});
  } else if (m0) {
    // Plane y = 0: section parabola z = a x^2 / 2, off-plane line t = -1/b.
    nb.kind = QueryKind::plane_y0;
    const auto feet = detail::plane_feet(a, b, A.x, A.z, opt.collapse_band, nb.roots);
    for (const auto& f : feet) nb.details.push_back({SpacePoint(f.along, f.off, f.z), f.t, f.multiplicity, f.off_plane});
  } else {
    nb.kind = QueryKind::general;
    const Polynomial quintic = normal_equation(p, A, opt.degenerate_threshold);
    RootSet rs = isolate_real_roots(quintic, opt.root_tol);
    const auto resolved = detail::resolve_poles(p, A, rs.roots, opt.root_tol);
    rs.roots.clear();
    for (const detail::PoleRoot& r : resolved) {
      rs.roots.push_back({r.t, r.multiplicity});
      const SpacePoint foot{r.ta != 0.0 ? A.x / (a * r.ta) : 0.0, r.tb != 0.0 ? A.y / (b * r.tb) : 0.0, A.z + r.t};
      nb.details.push_back({foot, r.t, r.multiplicity, false});
    }
    nb.roots = rs;
  }
  std::sort(nb.details.begin(), nb.details.end(), [](const Foot& f, const Foot& g) {
    if (f.t != g.t) return f.t < g.t;
    return f.point.x < g.point.x;
  });
  detail::finish_bundle(nb);
  return nb;
}

struct NormalCount {
  int count = 0;
  bool on_boundary = false;
};

inline NormalCount count_normals(const Paraboloid& p, const SpacePoint& A, double eps = 1e-12) {
  NormalsOptions opt;
  opt.root_tol = eps;
  const NormalBundle nb = concurrent_normals(p, A, opt);
  return {nb.count(), nb.on_boundary()};
}

/// |(A - B) x N(B)| / (|A - B| |N(B)|): zero when B is a normal foot for A.
inline double normal_alignment_residual(const Paraboloid& p, const SpacePoint& A, const SpacePoint& B) {
  const SpacePoint d = A - B;
  const SpacePoint n{-p.a() * B.x, -p.b() * B.y, 1.0};
  const double len = norm(d);
  if (len == 0.0) return 0.0;
  return norm(cross(d, n)) / (len * norm(n));
}

}  // namespace caustica
