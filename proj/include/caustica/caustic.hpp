#pragma once
//
// The two caustic sheets of the paraboloid and the curves and points that
// organize them: the sheets' intersections with the paraboloid, the nodal
// curve where the sheets cross, the sections by the planes x = 0 and y = 0,
// and the special points where those sections meet.
//
// Sheets are identified geometrically. Sheet k is the image of the
// rectangle u >= 1/a, -1/a <= v <= -1/b under the k-th parametrization;
// sheet 1 has its vertex at (0, 0, 1/b) and holds the centers of the smaller
// principal radius, sheet 2 has its vertex at (0, 0, 1/a). A formula
// evaluated outside the rectangle may land on the other sheet, because
// sheet 2 at (-v, -u) is sheet 1 at (u, v).
//

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "caustica/geometry.hpp"

namespace caustica {

struct SheetCoords {
  int sheet = 1;  ///< 1 or 2
  double u = 0.0;
  double v = 0.0;
};

enum class PointStatus { real, not_real, infinite };

inline const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::real: return "real";
    case PointStatus::not_real: return "not_real";
    case PointStatus::infinite: return "infinite";
  }
  return "?";
}

struct NamedPoint {
  std::string label;
  std::optional<SpacePoint> position;  ///< set iff status is real
  PointStatus status = PointStatus::real;
};

namespace detail {

inline void require_sheet(int sheet) {
  if (sheet != 1 && sheet != 2) throw InvalidArgument("sheet must be 1 or 2, got " + std::to_string(sheet));
}

inline SpacePoint signed_point(double x2, double y2, double z, Sign sx, Sign sy, double scale, double tol) {
  const double xr = checked_radicand(x2, scale, tol, "x^2");
  const double yr = checked_radicand(y2, scale, tol, "y^2");
  return {apply(sx, std::sqrt(xr)), apply(sy, std::sqrt(yr)), z};
}

}  // namespace detail

/// Squared coordinates and height of a sheet at (u, v), no domain checks.
inline std::array<double, 3> caustic_squares(const Paraboloid& p, const SheetCoords& c) {
  detail::require_sheet(c.sheet);
  const double a = p.a(), b = p.b(), u = c.u, v = c.v;
  const double au = a * u - 1.0, av = a * v + 1.0, bu = b * u - 1.0, bv = b * v + 1.0;
  if (c.sheet == 1)
    return {b * au * av * av * av / (a * a * (b - a)), -a * bu * bv * bv * bv / (b * b * (b - a)),
            (a * b * (u - 3.0 * v) - a - b) / (2.0 * a * b)};
  return {b * au * au * au * av / (a * a * (b - a)), -a * bu * bu * bu * bv / (b * b * (b - a)),
          (a * b * (3.0 * u - v) - a - b) / (2.0 * a * b)};
}

inline SpacePoint caustic_point(const Paraboloid& p, const SheetCoords& c, Sign sx = Sign::plus,
                                Sign sy = Sign::plus, double tol = 1e-12) {
  detail::require_finite(c.u, "u");
  detail::require_finite(c.v, "v");
  const auto [x2, y2, z] = caustic_squares(p, c);
  const double scale = std::abs(z) + std::pow(1.0 + std::abs(c.u) + std::abs(c.v), 4);
  return detail::signed_point(x2, y2, z, sx, sy, scale, tol);
}

/// The geometric sheet a formula point belongs to: `formula` at (u, v) is
/// on sheet `formula` when (u, v) is in the rectangle and on the other sheet
/// when (-v, -u) is. Returns 0 when neither holds.
inline int geometric_sheet(const Paraboloid& p, int formula, double u, double v, double tol = 1e-12) {
  detail::require_sheet(formula);
  if (ParabolicCoords{u, v}.in_domain(p, tol)) return formula;
  if (ParabolicCoords{-v, -u}.in_domain(p, tol)) return 3 - formula;
  return 0;
}

/// Height of each sheet's vertex: sheet 1 at 1/b, sheet 2 at 1/a.
inline double sheet_vertex_height(const Paraboloid& p, int sheet) {
  return caustic_squares(p, {sheet, 1.0 / p.a(), -1.0 / p.b()})[2];
}

/// The sheet whose vertex is lower, found by evaluating both vertices.
inline int lower_sheet(const Paraboloid& p) {
  return sheet_vertex_height(p, 1) <= sheet_vertex_height(p, 2) ? 1 : 2;
}

/// Pairing of the sheets with the principal radii, found by comparing the
/// curvature centers of surface points with sheet points at the same (u, v).
struct SheetPairing {
  int sheet_of_r1 = 0;
  int sheet_of_r2 = 0;
  double max_mismatch = 0.0;  ///< largest distance between paired points over the probes
};

inline SheetPairing discover_sheet_pairing(const Paraboloid& p) {
  const double a = p.a(), b = p.b();
  const std::array<std::array<double, 2>, 4> probes{
      {{{1.0 / a + 0.7 / a, -1.0 / a + 0.3 * (1.0 / a - 1.0 / b)}},
       {{1.0 / a + 2.5 / a, -1.0 / a + 0.8 * (1.0 / a - 1.0 / b)}},
       {{1.0 / a + 0.1 / a, -1.0 / a + 0.5 * (1.0 / a - 1.0 / b)}},
       {{1.0 / a + 5.0 / a, -1.0 / a + 0.1 * (1.0 / a - 1.0 / b)}}}};
  // Distance from a center to the four mirror images of a sheet point.
  auto mirror_distance = [&](const SpacePoint& c, int sheet, double u, double v) {
    double best = std::numeric_limits<double>::infinity();
    for (Sign sx : {Sign::plus, Sign::minus})
      for (Sign sy : {Sign::plus, Sign::minus}) best = std::min(best, distance(c, caustic_point(p, {sheet, u, v}, sx, sy)));
    return best;
  };
  std::array<std::array<double, 2>, 2> worst{};  // [radius][sheet]
  for (const auto& [u, v] : probes) {
    const SpacePoint s = surface_from_parabolic(p, {u, v});
    const auto centers = curvature_centers(p, s.x, s.y);
    for (std::size_t r = 0; r < 2; ++r)
      for (int k = 1; k <= 2; ++k)
        worst[r][k - 1] = std::max(worst[r][k - 1], mirror_distance(centers[r], k, u, v) / (1.0 + norm(centers[r])));
  }
  SheetPairing out;
  out.sheet_of_r1 = worst[0][0] <= worst[0][1] ? 1 : 2;
  out.sheet_of_r2 = worst[1][0] <= worst[1][1] ? 1 : 2;
  out.max_mismatch = std::max(worst[0][out.sheet_of_r1 - 1], worst[1][out.sheet_of_r2 - 1]);
  return out;
}

// ---------------------------------------------------------------------------
// Real parameter domains

/// A closed parameter interval of a curve; `sheet` is the geometric caustic
/// sheet of the piece (0 for curves on the paraboloid or on both sheets).
struct CurveInterval {
  double lo = 0.0;
  double hi = 0.0;
  int sheet = 0;
};

namespace detail {

// Intervals of [lo, hi] where `feasible` holds. Sign changes happen at the
// `knots` (known radicand zeros and poles) or are located by bisection
// between grid nodes. Points in `cuts` are excluded, splitting intervals.
inline std::vector<CurveInterval> scan_domain(const std::function<bool(double)>& feasible, std::vector<double> knots,
                                              const std::vector<double>& cuts, double lo, double hi, int grid = 512) {
  std::vector<double> nodes;
  for (int i = 0; i <= grid; ++i) nodes.push_back(lo + (hi - lo) * i / grid);
  for (double k : knots)
    if (k > lo && k < hi) nodes.push_back(k);
  for (double c : cuts)
    if (c > lo && c < hi) nodes.push_back(c);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  auto is_knot = [&](double x) {
    return std::find(knots.begin(), knots.end(), x) != knots.end() || std::find(cuts.begin(), cuts.end(), x) != cuts.end() ||
           x == lo || x == hi;
  };
  auto is_cut = [&](double x) { return std::find(cuts.begin(), cuts.end(), x) != cuts.end(); };
  auto bisect = [&](double in, double out) {
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (in + out);
      if (mid == in || mid == out) break;
      (feasible(mid) ? in : out) = mid;
    }
    return in;
  };

  std::vector<CurveInterval> out;
  bool open = false;
  double start = lo;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double x0 = nodes[i], x1 = nodes[i + 1];
    const bool ok = feasible(0.5 * (x0 + x1));
    if (ok && !open) {
      open = true;
      start = x0;
      if (!is_knot(x0) && i > 0) start = feasible(x0) ? bisect(x0, nodes[i - 1]) : bisect(0.5 * (x0 + x1), x0);
      if (is_cut(x0)) start = bisect(0.5 * (x0 + x1), x0);
    }
    const bool close = !ok || is_cut(x1);
    if (open && close) {
      double end = ok ? x1 : x0;
      if (!ok && !is_knot(x0)) end = bisect(x0, 0.5 * (x0 + x1));
      if (ok && is_cut(x1)) end = bisect(0.5 * (x0 + x1), x1);
      if (end > start) out.push_back({start, end, 0});
      open = false;
    }
  }
  if (open && hi > start) out.push_back({start, hi, 0});
  return out;
}

// Splits intervals at the given parameter values.
inline std::vector<CurveInterval> split_at(const std::vector<CurveInterval>& in, const std::vector<double>& at) {
  std::vector<CurveInterval> out;
  for (const CurveInterval& iv : in) {
    double lo = iv.lo;
    std::vector<double> inner;
    for (double x : at)
      if (x > iv.lo && x < iv.hi) inner.push_back(x);
    std::sort(inner.begin(), inner.end());
    for (double x : inner) {
      out.push_back({lo, x, iv.sheet});
      lo = x;
    }
    out.push_back({lo, iv.hi, iv.sheet});
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Intersection of the paraboloid with the caustics

/// The sheet-1 formula restricted to the paraboloid, u = t / ((a+b) t + 3),
/// v = t, and the sheet-2 formula with u = s, v = -s / ((a+b) s - 3). Both
/// trace the same point set (s = -t).
inline std::array<double, 3> intersection_squares(const Paraboloid& p, int sheet, double t) {
  detail::require_sheet(sheet);
  const double a = p.a(), b = p.b();
  if (sheet == 1) {
    const double den = (a + b) * t + 3.0;
    const double at1 = a * t + 1.0, bt1 = b * t + 1.0;
    return {b * (b * t + 3.0) * at1 * at1 * at1 / (a * a * (a - b) * den),
            -a * (a * t + 3.0) * bt1 * bt1 * bt1 / (b * b * (a - b) * den),
            -(3.0 * a * b * (a + b) * t * t + (a * a + 10.0 * a * b + b * b) * t + 3.0 * (a + b)) / (2.0 * a * b * den)};
  }
  const double s = t;
  const double den = (a + b) * s - 3.0;
  const double as1 = a * s - 1.0, bs1 = b * s - 1.0;
  return {-b * as1 * as1 * as1 * (b * s - 3.0) / (a * a * (a - b) * den),
          a * bs1 * bs1 * bs1 * (a * s - 3.0) / (b * b * (a - b) * den),
          (3.0 * a * b * (a + b) * s * s - (a * a + 10.0 * a * b + b * b) * s + 3.0 * (a + b)) / (2.0 * a * b * den)};
}

/// Pole of the intersection parametrization: t = -3/(a+b) for sheet 1,
/// s = 3/(a+b) for sheet 2.
inline double intersection_pole(const Paraboloid& p, int sheet) {
  detail::require_sheet(sheet);
  return (sheet == 1 ? -3.0 : 3.0) / (p.a() + p.b());
}

inline SpacePoint intersection_curve_point(const Paraboloid& p, int sheet, double t, Sign sx = Sign::plus,
                                           Sign sy = Sign::plus, double tol = 1e-12) {
  detail::require_finite(t, "t");
  const double pole = intersection_pole(p, sheet);
  if (std::abs(t - pole) <= 1e-14 * (1.0 + std::abs(pole)))
    throw PoleError("intersection curve parameter " + detail::fmt_double(t) + " is at the pole (a+b)t " +
                    (sheet == 1 ? "+ 3 = 0" : "- 3 = 0"));
  const auto [x2, y2, z] = intersection_squares(p, sheet, t);
  const double scale = std::abs(z) + std::pow(1.0 + std::abs(t) * p.b(), 4) / (1.0 + std::abs(t - pole) * p.b());
  return detail::signed_point(x2, y2, z, sx, sy, scale, tol);
}

/// Parabolic coordinates the intersection parametrization uses at t.
inline ParabolicCoords intersection_sheet_coords(const Paraboloid& p, int sheet, double t) {
  detail::require_sheet(sheet);
  const double a = p.a(), b = p.b();
  if (sheet == 1) return {t / ((a + b) * t + 3.0), t};
  return {t, -t / ((a + b) * t - 3.0)};
}

/// Geometric sheet of the intersection curve point at parameter t.
inline int intersection_piece_sheet(const Paraboloid& p, int sheet, double t) {
  const ParabolicCoords c = intersection_sheet_coords(p, sheet, t);
  return geometric_sheet(p, sheet, c.u, c.v, 1e-9);
}

// ---------------------------------------------------------------------------
// Self-intersection points E_i

/// E1 (+x, +y), E2 (-x, +y), E3 (+x, -y), E4 (-x, -y). At b = 3a the x
/// coordinate vanishes, so E1 = E2 and E3 = E4.
inline std::vector<NamedPoint> e_points(const Paraboloid& p, double eps = 1e-9) {
  const double a = p.a(), b = p.b();
  const bool real = b >= 3.0 * a * (1.0 - eps);
  const double s2 = 2.0 * std::numbers::sqrt2;
  const double x = s2 * (b - a) * (b - 3.0 * a) / (a * (a + b) * (a + b));
  const double y = s2 * (b - a) * (3.0 * b - a) / (b * (a + b) * (a + b));
  const double z = 4.0 * (a - b) * (a - b) / (a * b * (a + b));
  const double xe = std::abs(b - 3.0 * a) <= eps * 3.0 * a ? 0.0 : x;
  std::vector<NamedPoint> out;
  const std::array<std::pair<const char*, std::array<Sign, 2>>, 4> labels{{{"E1", {Sign::plus, Sign::plus}},
                                                                           {"E2", {Sign::minus, Sign::plus}},
                                                                           {"E3", {Sign::plus, Sign::minus}},
                                                                           {"E4", {Sign::minus, Sign::minus}}}};
  for (const auto& [label, signs] : labels) {
    NamedPoint np{label, std::nullopt, real ? PointStatus::real : PointStatus::not_real};
    if (real) np.position = SpacePoint(apply(signs[0], xe), apply(signs[1], y), z);
    out.push_back(np);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nodal curve

struct NodalParametrization {
  double delta = 0.0;  ///< (b - a) / (2ab)
  double t0 = 0.0;     ///< (a + b) / (2ab), parameter of E_i
  double t1 = 0.0;     ///< -4 (a - b)^2 / (ab (a + b)), the second root of z(t) = z_E, not a real point
  std::array<std::optional<double>, 2> s0;  ///< the +/- roots of x_1(t) = x_2(s); empty when complex
  std::array<bool, 2> s0_reproduces_e{};    ///< whether the curve point at s0 is an E_i
};

inline NodalParametrization nodal_parametrization(const Paraboloid& p, double eps = 1e-9) {
  const double a = p.a(), b = p.b();
  NodalParametrization np;
  np.delta = (b - a) / (2.0 * a * b);
  np.t0 = (a + b) / (2.0 * a * b);
  np.t1 = -4.0 * (a - b) * (a - b) / (a * b * (a + b));
  const double disc = 3.0 * (3.0 * a - b) * (a - 3.0 * b);
  const double scale = 9.0 * (a + b) * (a + b);
  if (disc >= -eps * scale) {
    const double root = std::sqrt(std::max(0.0, disc));
    const auto e = e_points(p, eps);
    for (int k = 0; k < 2; ++k) {
      const double sign = k == 0 ? 1.0 : -1.0;
      const double s0 = (3.0 * a * a - 2.0 * a * b + 3.0 * b * b + sign * (a - b) * root) / (2.0 * a * b * (a + b));
      np.s0[static_cast<std::size_t>(k)] = s0;
      if (e[0].position) {
        const auto [x2, y2, z] = intersection_squares(p, 2, s0);
        const SpacePoint& E = *e[0].position;
        const double d = std::abs(std::sqrt(std::max(0.0, x2)) - std::abs(E.x)) +
                         std::abs(std::sqrt(std::max(0.0, y2)) - std::abs(E.y)) + std::abs(z - E.z);
        np.s0_reproduces_e[static_cast<std::size_t>(k)] = d <= 1e-8 * (1.0 + std::abs(E.z));
      }
    }
  }
  return np;
}

/// Squared coordinates and height of the delta-parametrized nodal curve.
inline std::array<double, 3> nodal_caspari_squares(const Paraboloid& p, double t) {
  const double a = p.a(), b = p.b();
  const double d = (b - a) / (2.0 * a * b);
  const double t4 = t * t * t * t;
  const double tp = t + d, tm = t - d;
  return {8.0 * a * d * d * tp * tp * tp * (t - 2.0 * d) * (t - 2.0 * d) / t4,
          8.0 * b * d * d * tm * tm * tm * (t + 2.0 * d) * (t + 2.0 * d) / t4,
          (8.0 * d * d - t * t) / t + (a + b) / (2.0 * a * b)};
}

inline SpacePoint nodal_point_caspari(const Paraboloid& p, double t, Sign sx = Sign::plus, Sign sy = Sign::plus,
                                      double tol = 1e-12) {
  detail::require_finite(t, "t");
  if (t == 0.0) throw PoleError("nodal parameter t = 0 is a pole");
  const auto [x2, y2, z] = nodal_caspari_squares(p, t);
  const double d = (p.b() - p.a()) / (2.0 * p.a() * p.b());
  const double scale = std::abs(z) + std::pow(1.0 + std::abs(t) / d, 5) * d * (p.a() + p.b());
  return detail::signed_point(x2, y2, z, sx, sy, scale, tol);
}

/// The quadratic under the radical of u_2(t) and its discriminant, which is
/// -288 a^2 b^2 (a - b)^2, so the radical is real for every t.
inline double nodal_radicand(const Paraboloid& p, double t) {
  const double a = p.a(), b = p.b();
  return 12.0 * a * a * b * b * t * t + 12.0 * a * a * b * t + 12.0 * a * b * b * t + 9.0 * a * a - 6.0 * a * b +
         9.0 * b * b;
}

inline double nodal_radicand_discriminant(const Paraboloid& p) {
  const double a = p.a(), b = p.b();
  const double A = 12.0 * a * a * b * b, B = 12.0 * a * b * (a + b), C = 9.0 * a * a - 6.0 * a * b + 9.0 * b * b;
  return B * B - 4.0 * A * C;
}

/// Sheet-2 coordinates (u_2, v_2) of the nodal point over v_1 = t.
inline ParabolicCoords nodal_uv_coords(const Paraboloid& p, double t) {
  const double a = p.a(), b = p.b();
  const double u2 = (4.0 * a * b * t + 3.0 * a + 3.0 * b + std::sqrt(nodal_radicand(p, t))) / (2.0 * a * b);
  const double ra = (a * u2 - 1.0) / (a * t + 1.0);
  const double rb = (b * u2 - 1.0) / (b * t + 1.0);
  const double P = ra * ra * ra, Q = rb * rb * rb;
  const double v2 = (a * (1.0 + Q) - b * (1.0 + P)) / (a * b * (P - Q));
  return {u2, v2};
}

inline SpacePoint nodal_point_uv(const Paraboloid& p, double t, Sign sx = Sign::plus, Sign sy = Sign::plus,
                                 double tol = 1e-9) {
  detail::require_finite(t, "t");
  const double a = p.a(), b = p.b();
  if (std::abs(a * t + 1.0) <= 1e-15 || std::abs(b * t + 1.0) <= 1e-15)
    throw PoleError("nodal parameter t = -1/a or -1/b is a removable singularity; evaluate inside the interval");
  const ParabolicCoords c = nodal_uv_coords(p, t);
  if (!std::isfinite(c.u) || !std::isfinite(c.v)) throw DomainError("nodal (u, v) not finite at t = " + detail::fmt_double(t));
  const auto [x2, y2, z] = caustic_squares(p, {2, c.u, c.v});
  const double scale = std::abs(z) + std::pow(1.0 + std::abs(c.u) * b + std::abs(c.v) * b, 4);
  return detail::signed_point(x2, y2, z, sx, sy, scale, tol);
}

// ---------------------------------------------------------------------------
// Sections by the coordinate planes

/// Curves 14..19: the paraboloid's sections (14, 15) and the sheets'
/// sections with u = 1/a (16, 17) and u = 1/b (18, 19). Curves 14, 16, 17
/// lie in x = 0 and 15, 18, 19 in y = 0; `sign` picks the branch of the
/// nonzero horizontal coordinate.
inline SpacePoint plane_curve_point(const Paraboloid& p, int curve_id, double t, Sign sign = Sign::plus,
                                    double tol = 1e-12) {
  detail::require_finite(t, "t");
  const double a = p.a(), b = p.b();
  double w2 = 0.0, z = 0.0;
  const double at1 = a * t + 1.0, bt1 = b * t + 1.0;
  switch (curve_id) {
    case 14: w2 = -bt1 / (b * b); z = -bt1 / (2.0 * b); break;
    case 15: w2 = -at1 / (a * a); z = -at1 / (2.0 * a); break;
    case 16: w2 = -bt1 * bt1 * bt1 / (b * b); z = -(3.0 * b * t + 1.0) / (2.0 * b); break;
    case 17: w2 = -(b - a) * (b - a) * bt1 / (a * a * b * b); z = -(a * b * t + a - 2.0 * b) / (2.0 * a * b); break;
    case 18: w2 = -at1 * at1 * at1 / (a * a); z = -(3.0 * a * t + 1.0) / (2.0 * a); break;
    case 19: w2 = -(b - a) * (b - a) * at1 / (a * a * b * b); z = -(a * b * t + b - 2.0 * a) / (2.0 * a * b); break;
    default: throw InvalidArgument("plane curve id must be 14..19, got " + std::to_string(curve_id));
  }
  const double w = apply(sign, std::sqrt(detail::checked_radicand(w2, std::pow(1.0 + std::abs(t) * b, 3), tol, "w^2")));
  const bool in_x0 = curve_id == 14 || curve_id == 16 || curve_id == 17;
  return in_x0 ? SpacePoint(0.0, w, z) : SpacePoint(w, 0.0, z);
}

/// Upper end of the real domain of a plane curve: -1/b for 14, 16, 17 and
/// -1/a for 15, 18, 19 (the domain extends to -infinity).
inline double plane_curve_upper(const Paraboloid& p, int curve_id) {
  switch (curve_id) {
    case 14: case 16: case 17: return -1.0 / p.b();
    case 15: case 18: case 19: return -1.0 / p.a();
    default: throw InvalidArgument("plane curve id must be 14..19, got " + std::to_string(curve_id));
  }
}

/// Geometric sheet of a plane curve point (0 for 14 and 15).
inline int plane_curve_sheet(const Paraboloid& p, int curve_id, double t) {
  switch (curve_id) {
    case 14: case 15: return 0;
    case 16: return geometric_sheet(p, 1, 1.0 / p.a(), t, 1e-9);
    case 17: return geometric_sheet(p, 2, 1.0 / p.a(), t, 1e-9);
    case 18: return geometric_sheet(p, 1, 1.0 / p.b(), t, 1e-9);
    case 19: return geometric_sheet(p, 2, 1.0 / p.b(), t, 1e-9);
    default: throw InvalidArgument("plane curve id must be 14..19, got " + std::to_string(curve_id));
  }
}

/// Parameters of H_i on curves 16 and 17 and of K_i on curves 18 and 19.
inline double plane_curve_anchor(const Paraboloid& p, int curve_id) {
  const double a = p.a(), b = p.b();
  switch (curve_id) {
    case 16: case 17: return -1.0 / a;
    case 18: return (2.0 * a - 3.0 * b) / (a * b);
    case 19: return (8.0 * a - 9.0 * b) / (a * b);
    default: throw InvalidArgument("anchor defined for curves 16..19 only, got " + std::to_string(curve_id));
  }
}

// ---------------------------------------------------------------------------
// Special points

inline std::vector<NamedPoint> special_points(const Paraboloid& p, double eps = 1e-9) {
  const double a = p.a(), b = p.b();
  const double s2 = 2.0 * std::numbers::sqrt2;
  std::vector<NamedPoint> out;
  auto real = [&](std::string label, double x, double y, double z) {
    out.push_back({std::move(label), SpacePoint(x, y, z), PointStatus::real});
  };
  auto status_only = [&](std::string label, PointStatus s) { out.push_back({std::move(label), std::nullopt, s}); };

  real("F1", 0.0, s2 / b, 4.0 / b);
  real("F2", 0.0, -s2 / b, 4.0 / b);

  if (std::abs(b - 2.0 * a) <= eps * 2.0 * a) {
    status_only("G1", PointStatus::infinite);
    status_only("G2", PointStatus::infinite);
  } else if (b > 2.0 * a) {
    const double gy = std::sqrt(2.0 * (a - b) * (a - b) / (a * b * b * (b - 2.0 * a)));
    const double gz = (a - b) * (a - b) / (a * b * (b - 2.0 * a));
    real("G1", 0.0, gy, gz);
    real("G2", 0.0, -gy, gz);
  } else {
    status_only("G1", PointStatus::not_real);
    status_only("G2", PointStatus::not_real);
  }

  const double hy = std::sqrt((b - a) * (b - a) * (b - a) / (a * a * a * b * b));
  const double hz = (3.0 * b - a) / (2.0 * a * b);
  real("H1", 0.0, hy, hz);
  real("H2", 0.0, -hy, hz);

  real("I1", s2 / a, 0.0, 4.0 / a);
  real("I2", -s2 / a, 0.0, 4.0 / a);

  // (a-b)^2 / (a^2 b (a - 2b)) < 0 for a < b.
  status_only("J1", PointStatus::not_real);
  status_only("J2", PointStatus::not_real);

  const double kx = std::sqrt(8.0 * (b - a) * (b - a) * (b - a) / (a * a * b * b * b));
  const double kz = (4.0 * b - 3.0 * a) / (a * b);
  real("K1", kx, 0.0, kz);
  real("K2", -kx, 0.0, kz);

  real("V_b", 0.0, 0.0, 1.0 / b);
  real("V_a", 0.0, 0.0, 1.0 / a);

  for (NamedPoint& e : e_points(p, eps)) out.push_back(std::move(e));
  return out;
}

inline std::optional<NamedPoint> find_point(const std::vector<NamedPoint>& pts, const std::string& label) {
  for (const NamedPoint& np : pts)
    if (np.label == label) return np;
  return std::nullopt;
}

struct TangencyReport {
  double meet_distance = 0.0;   ///< |(16)(-1/a) - (17)(-1/a)|
  double tangent_cross = 0.0;   ///< |T16 x T17| for unit tangents at H_1
  double height_above = 0.0;    ///< H_1.z minus the paraboloid height over H_1
  bool above_paraboloid = false;
  bool tangent = false;
};

/// Checks that curves 16 and 17 touch at H_1 and reports the side of the
/// paraboloid H_1 lies on. Tangents are one-sided central differences taken
/// inside the domain (t > -1/a on both curves).
inline TangencyReport h_tangency_check(const Paraboloid& p) {
  const double a = p.a(), b = p.b();
  const double t0 = -1.0 / a;
  TangencyReport r;
  const SpacePoint h16 = plane_curve_point(p, 16, t0);
  const SpacePoint h17 = plane_curve_point(p, 17, t0);
  r.meet_distance = distance(h16, h17);
  auto unit_tangent = [&](int id) {
    const double h = 1e-6 * (1.0 / a - 1.0 / b);
    const SpacePoint d = plane_curve_point(p, id, t0 + h) - plane_curve_point(p, id, t0 - h);
    return (1.0 / norm(d)) * d;
  };
  r.tangent_cross = norm(cross(unit_tangent(16), unit_tangent(17)));
  r.tangent = r.meet_distance < 1e-12 * (1.0 + norm(h16)) && r.tangent_cross < 1e-8;
  r.height_above = h16.z - p.height(h16.x, h16.y);
  r.above_paraboloid = r.height_above > 1e-12 * (1.0 + h16.z);
  return r;
}

// ---------------------------------------------------------------------------
// Adaptive sampling

/// Parameters on [lo, hi] such that each chord is at most `max_len` long and
/// its midpoint deviates from the curve by at most `chord_tol` (both
/// relative to 1 + |point|). Starts from `min_count` uniform intervals.
inline std::vector<double> adaptive_parameters(const std::function<SpacePoint(double)>& f, double lo, double hi,
                                               double chord_tol, double max_len, int min_count = 16,
                                               int max_depth = 24) {
  std::vector<double> out;
  out.push_back(lo);
  std::function<void(double, const SpacePoint&, double, const SpacePoint&, int)> refine =
      [&](double t0, const SpacePoint& p0, double t1, const SpacePoint& p1, int depth) {
        const double tm = 0.5 * (t0 + t1);
        const SpacePoint pm = f(tm);
        const double scale = 1.0 + std::max(norm(p0), norm(p1));
        const SpacePoint chord_mid = 0.5 * (p0 + p1);
        const bool fine = distance(pm, chord_mid) <= chord_tol * scale && distance(p0, p1) <= max_len * scale;
        if (fine || depth >= max_depth || !(tm > t0 && tm < t1)) {
          out.push_back(t1);
          return;
        }
        refine(t0, p0, tm, pm, depth + 1);
        refine(tm, pm, t1, p1, depth + 1);
      };
  const int n = std::max(1, min_count);
  double t_prev = lo;
  SpacePoint p_prev = f(lo);
  for (int k = 1; k <= n; ++k) {
    const double t = k == n ? hi : lo + (hi - lo) * k / n;
    const SpacePoint q = f(t);
    refine(t_prev, p_prev, t, q, 0);
    t_prev = t;
    p_prev = q;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves by id, with their real domains

enum class CurveId { c8, c9, nodal, nodal_uv, c14, c15, c16, c17, c18, c19 };

inline const char* to_string(CurveId id) {
  switch (id) {
    case CurveId::c8: return "8";
    case CurveId::c9: return "9";
    case CurveId::nodal: return "nodal";
    case CurveId::nodal_uv: return "nodal-uv";
    case CurveId::c14: return "14";
    case CurveId::c15: return "15";
    case CurveId::c16: return "16";
    case CurveId::c17: return "17";
    case CurveId::c18: return "18";
    case CurveId::c19: return "19";
  }
  return "?";
}

inline CurveId curve_id_from_string(const std::string& s) {
  for (CurveId id : {CurveId::c8, CurveId::c9, CurveId::nodal, CurveId::nodal_uv, CurveId::c14, CurveId::c15,
                     CurveId::c16, CurveId::c17, CurveId::c18, CurveId::c19})
    if (s == to_string(id)) return id;
  throw InvalidArgument("unknown curve id '" + s + "' (expected 8, 9, nodal, nodal-uv, 14..19)");
}

inline int plane_id(CurveId id) { return 14 + static_cast<int>(id) - static_cast<int>(CurveId::c14); }

inline bool is_plane_curve(CurveId id) { return static_cast<int>(id) >= static_cast<int>(CurveId::c14); }

/// Which horizontal coordinate can be nonzero: curves in x = 0 only vary y.
inline bool curve_in_plane_x0(CurveId id) { return id == CurveId::c14 || id == CurveId::c16 || id == CurveId::c17; }
inline bool curve_in_plane_y0(CurveId id) { return id == CurveId::c15 || id == CurveId::c18 || id == CurveId::c19; }

inline SpacePoint curve_point(const Paraboloid& p, CurveId id, double t, Sign sx = Sign::plus, Sign sy = Sign::plus) {
  switch (id) {
    case CurveId::c8: return intersection_curve_point(p, 1, t, sx, sy, 1e-9);
    case CurveId::c9: return intersection_curve_point(p, 2, t, sx, sy, 1e-9);
    case CurveId::nodal: return nodal_point_caspari(p, t, sx, sy, 1e-9);
    case CurveId::nodal_uv: return nodal_point_uv(p, t, sx, sy, 1e-9);
    default: return plane_curve_point(p, plane_id(id), t, curve_in_plane_x0(id) ? sy : sx, 1e-9);
  }
}

/// Squared coordinates, used for domain scans.
inline std::array<double, 3> curve_squares(const Paraboloid& p, CurveId id, double t) {
  switch (id) {
    case CurveId::c8: return intersection_squares(p, 1, t);
    case CurveId::c9: return intersection_squares(p, 2, t);
    case CurveId::nodal: return nodal_caspari_squares(p, t);
    case CurveId::nodal_uv: {
      const ParabolicCoords c = nodal_uv_coords(p, t);
      return caustic_squares(p, {2, c.u, c.v});
    }
    default: {
      const SpacePoint q = plane_curve_point(p, plane_id(id), t, Sign::plus, std::numeric_limits<double>::infinity());
      return {q.x * q.x, q.y * q.y, q.z};
    }
  }
}

/// Geometric sheet of the curve point at t (0 for curves on the paraboloid
/// or on both sheets).
inline int curve_sheet(const Paraboloid& p, CurveId id, double t) {
  switch (id) {
    case CurveId::c8: return intersection_piece_sheet(p, 1, t);
    case CurveId::c9: return intersection_piece_sheet(p, 2, t);
    case CurveId::nodal: case CurveId::nodal_uv: return 0;
    default: return plane_curve_sheet(p, plane_id(id), t);
  }
}

struct DomainOptions {
  /// Pieces running off to infinity are cut where |point| reaches this.
  double clip_radius = 0.0;  ///< 0 selects 12 / a
};

/// Real parameter domain of a curve, split into pieces by geometric sheet
/// and clipped to the ball of radius `clip_radius`. Sign changes of the
/// radicands are found by scanning and bisection; known factor roots and
/// poles are used as scan knots.
inline std::vector<CurveInterval> curve_domain(const Paraboloid& p, CurveId id, DomainOptions opt = {}) {
  const double a = p.a(), b = p.b();
  const double R = opt.clip_radius > 0.0 ? opt.clip_radius : 12.0 / a;
  auto finite_real = [&](double t) {
    try {
      const auto q = curve_squares(p, id, t);
      return std::isfinite(q[0]) && std::isfinite(q[1]) && std::isfinite(q[2]) && q[0] >= 0.0 && q[1] >= 0.0;
    } catch (const Error&) {
      return false;
    }
  };
  auto inside = [&](double t) {
    if (!finite_real(t)) return false;
    const auto q = curve_squares(p, id, t);
    return q[0] + q[1] + q[2] * q[2] <= R * R;
  };

  std::vector<double> knots, cuts, splits;
  double lo = 0.0, hi = 0.0;
  switch (id) {
    case CurveId::c8:
    case CurveId::c9: {
      const double sg = id == CurveId::c8 ? 1.0 : -1.0;
      knots = {-3.0 / b * sg, -1.0 / a * sg, -3.0 / a * sg, -1.0 / b * sg};
      cuts = {-3.0 / (a + b) * sg};
      splits = {-1.0 / a * sg, -1.0 / b * sg};
      lo = -(3.0 / a + 1.0) * 4.0;
      hi = (3.0 / a + 1.0) * 4.0;
      break;
    }
    case CurveId::nodal: {
      // Past 2 delta the point is real but its double roots are complex:
      // only [delta, 2 delta] is where two real normal pairs coincide.
      const double d = (b - a) / (2.0 * a * b);
      knots = {d, 2.0 * d};
      lo = d;
      hi = 2.0 * d;
      break;
    }
    case CurveId::nodal_uv: {
      // Open at both ends: the formula is 0/0 at H (t = -1/a) and K (t = -1/b).
      const double w = 1.0 / a - 1.0 / b;
      lo = -1.0 / a + 1e-9 * w;
      hi = -1.0 / b - 1e-9 * w;
      break;
    }
    default: {
      const int c = plane_id(id);
      hi = plane_curve_upper(p, c);
      lo = hi - 4.0 * (R + 1.0) * (1.0 / a + 1.0);
      knots = {hi};
      if (c >= 16) knots.push_back(plane_curve_anchor(p, c));
      splits = {-1.0 / a, -1.0 / b};
      break;
    }
  }

  std::vector<CurveInterval> pieces = detail::scan_domain(inside, knots, cuts, lo, hi, 2048);
  pieces = detail::split_at(pieces, splits);
  std::vector<CurveInterval> out;
  for (CurveInterval& iv : pieces) {
    if (!(iv.hi > iv.lo)) continue;
    iv.sheet = curve_sheet(p, id, 0.5 * (iv.lo + iv.hi));
    out.push_back(iv);
  }
  return out;
}

}  // namespace caustica
