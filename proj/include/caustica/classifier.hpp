#pragma once
//
// Region logic: which of the four (a, b) cases a paraboloid falls in, how
// many normals pass through a query point and where the point sits relative
// to the caustics, and the decomposition of the paraboloid itself into
// regions of constant normal count.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "caustica/caustic.hpp"
#include "caustica/normals.hpp"
#include "caustica/oracle.hpp"

namespace caustica {

enum class CaseId { case1 = 1, case2 = 2, case3 = 3, case4 = 4 };

inline const char* to_string(CaseId c) {
  switch (c) {
    case CaseId::case1: return "Case1";
    case CaseId::case2: return "Case2";
    case CaseId::case3: return "Case3";
    case CaseId::case4: return "Case4";
  }
  return "?";
}

struct CaseClass {
  CaseId id = CaseId::case1;
  bool near_2a = false;  ///< |b - 2a| <= eps 2a
  bool near_3a = false;  ///< |b - 3a| <= eps 3a
};

inline CaseClass case_of(const Paraboloid& p, double eps = 1e-9) {
  const double a = p.a(), b = p.b();
  CaseClass c;
  c.near_2a = std::abs(b - 2.0 * a) <= eps * 2.0 * a;
  c.near_3a = std::abs(b - 3.0 * a) <= eps * 3.0 * a;
  if (c.near_3a)
    c.id = CaseId::case3;
  else if (b <= 2.0 * a || c.near_2a)
    c.id = CaseId::case1;
  else if (b < 3.0 * a)
    c.id = CaseId::case2;
  else
    c.id = CaseId::case4;
  return c;
}

enum class Location {
  interior_below,
  interior_between,
  interior_above,
  on_lower_sheet,
  on_upper_sheet,
  on_nodal,
  on_cusp,
  named,
  unresolved,
};

inline const char* to_string(Location l) {
  switch (l) {
    case Location::interior_below: return "interior_below";
    case Location::interior_between: return "interior_between";
    case Location::interior_above: return "interior_above";
    case Location::on_lower_sheet: return "on_lower_sheet";
    case Location::on_upper_sheet: return "on_upper_sheet";
    case Location::on_nodal: return "on_nodal";
    case Location::on_cusp: return "on_cusp";
    case Location::named: return "named";
    case Location::unresolved: return "unresolved";
  }
  return "?";
}

struct PointClassification {
  int count = 0;                 ///< distinct normals; -1 when unresolved
  Location location = Location::unresolved;
  std::string label;             ///< special point label(s) for `named`, joined by '='
  std::vector<int> pattern;      ///< foot multiplicities, descending
  std::vector<int> double_root_sheets;  ///< sheet (1 or 2) of each double root, by curvature pairing
  bool boundary = false;         ///< within the uncertainty band, or the two methods disagreed
  int geometric_count = -1;      ///< on-surface classification only
  std::string note;
};

namespace detail {

inline Location interior_location(int count) {
  switch (count) {
    case 1: return Location::interior_below;
    case 3: return Location::interior_between;
    case 5: return Location::interior_above;
    default: return Location::unresolved;
  }
}

// Labels of the real special points within `eps` of q, joined by '='.
inline std::string named_match(const std::vector<NamedPoint>& pts, const SpacePoint& q, double eps) {
  std::string label;
  for (const NamedPoint& np : pts) {
    if (!np.position) continue;
    if (distance(*np.position, q) <= eps * (1.0 + norm(*np.position))) label += (label.empty() ? "" : "=") + np.label;
  }
  return label;
}

// Sheet of a double root: the curvature center of its foot nearest to A,
// mapped through the radius-to-sheet pairing.
inline int double_root_sheet(const Paraboloid& p, const SheetPairing& pairing, const SpacePoint& A, const SpacePoint& foot) {
  const auto c = curvature_centers(p, foot.x, foot.y);
  return distance(c[0], A) <= distance(c[1], A) ? pairing.sheet_of_r1 : pairing.sheet_of_r2;
}

}  // namespace detail

inline PointClassification classify_point(const Paraboloid& p, const SpacePoint& A, double eps = 1e-7) {
  PointClassification pc;
  const auto pts = special_points(p);
  pc.label = detail::named_match(pts, A, eps);
  try {
    const NormalBundle nb = concurrent_normals(p, A);
    pc.count = nb.count();
    pc.pattern = nb.pattern;
    const SheetPairing pairing = discover_sheet_pairing(p);
    const int lower = lower_sheet(p);
    int high = 0;
    for (const Foot& f : nb.details) {
      if (f.multiplicity == 2) pc.double_root_sheets.push_back(detail::double_root_sheet(p, pairing, A, f.point));
      if (f.multiplicity >= 3) ++high;
    }
    const int doubles = nb.multiplicity_count(2);
    if (!pc.label.empty())
      pc.location = Location::named;
    else if (high > 0)
      pc.location = Location::on_cusp;
    else if (doubles >= 2)
      pc.location = Location::on_nodal;
    else if (doubles == 1)
      pc.location = pc.double_root_sheets[0] == lower ? Location::on_lower_sheet : Location::on_upper_sheet;
    else
      pc.location = detail::interior_location(pc.count);
    if (pc.location == Location::unresolved) pc.boundary = true;
  } catch (const IllConditioned& e) {
    pc.boundary = true;
    pc.note = e.what();
    try {
      pc.count = count_from_scan(p, A).count;
    } catch (const Error&) {
      pc.count = -1;
    }
    pc.location = pc.label.empty() ? detail::interior_location(pc.count) : Location::named;
  }
  return pc;
}

/// Counts on the paraboloid decided by position relative to the curves
/// where it meets the caustics, using the first quadrant and the four-fold
/// symmetry. Built once per paraboloid and reach, then queried many times.
class SurfaceClassifier {
 public:
  /// `reach` bounds |(x, y)| of the points that will be classified.
  SurfaceClassifier(const Paraboloid& p, double reach, double eps = 1e-7) : p_(p), eps_(eps) {
    const double a = p.a(), b = p.b();
    reach_ = std::max(reach, 4.0 / a);
    const double zmax = 0.5 * b * reach_ * reach_;
    DomainOptions dopt;
    dopt.clip_radius = 1.5 * std::sqrt(reach_ * reach_ + zmax * zmax) + 12.0 / a;
    for (const CurveInterval& iv : curve_domain(p, CurveId::c8, dopt)) {
      Piece piece;
      piece.sheet = iv.sheet;
      auto f = [&](double t) { return intersection_curve_point(p, 1, t, Sign::plus, Sign::plus, 1e-9); };
      piece.t = adaptive_parameters(f, iv.lo, iv.hi, 1e-7, 0.01, 64);
      for (double t : piece.t) {
        const SpacePoint q = f(t);
        piece.xy.push_back({q.x, q.y});
      }
      extend_on_axes(piece);
      pieces_.push_back(std::move(piece));
    }
    const auto e = e_points(p);
    if (e[0].position) e_ = std::array<double, 2>{std::abs(e[0].position->x), std::abs(e[0].position->y)};
    const auto g = find_point(special_points(p), "G1");
    if (g && g->position) g_ = std::array<double, 2>{0.0, std::abs(g->position->y)};
    pairing_ = discover_sheet_pairing(p);
    lower_ = lower_sheet(p);
    case_ = case_of(p);
  }

  const Paraboloid& paraboloid() const { return p_; }
  double reach() const { return reach_; }

  /// Number of times the segment [p, q] crosses the curves, counting all
  /// four mirror copies.
  int segment_crossings(std::array<double, 2> p, std::array<double, 2> q) const {
    int n = 0;
    for (int sx = -1; sx <= 1; sx += 2)
      for (int sy = -1; sy <= 1; sy += 2) {
        const std::array<double, 2> mp{sx * p[0], sy * p[1]}, mq{sx * q[0], sy * q[1]};
        for (const Piece& piece : pieces_) {
          const auto& v = piece.xy;
          for (std::size_t i = 0; i + 1 < v.size(); ++i) n += segments_cross(mp, mq, v[i], v[i + 1]);
        }
      }
    return n;
  }

  struct Geometric {
    int count = 0;
    bool on_curve = false;
    int sheet = 0;  ///< sheet of the curve piece the point is on
    std::string label;
  };

  Geometric geometric(double x, double y) const {
    const std::array<double, 2> q{std::abs(x), std::abs(y)};
    const double scale = 1.0 + std::hypot(q[0], q[1]);
    Geometric g;
    if (e_ && std::hypot(q[0] - (*e_)[0], q[1] - (*e_)[1]) <= eps_ * scale) {
      g.on_curve = true;
      g.label = "E";
      g.count = case_.id == CaseId::case3 ? 2 : 3;
      return g;
    }
    if (g_ && std::hypot(q[0] - (*g_)[0], q[1] - (*g_)[1]) <= eps_ * scale) {
      g.on_curve = true;
      g.label = "G";
      g.count = case_.id == CaseId::case3 ? 2 : 3;
      return g;
    }
    for (const Piece& piece : pieces_) {
      std::array<double, 2> normal{};
      if (near_piece(piece, q, eps_ * scale, normal)) {
        // Average of the counts on either side of the curve.
        const double d = 1e-4 * scale;
        const int c1 = crossing_count({q[0] + d * normal[0], q[1] + d * normal[1]});
        const int c2 = crossing_count({q[0] - d * normal[0], q[1] - d * normal[1]});
        g.on_curve = true;
        g.sheet = piece.sheet;
        g.count = (c1 + c2) / 2;
        return g;
      }
    }
    g.count = crossing_count(q);
    return g;
  }

  PointClassification classify(double x, double y) const {
    detail::require_finite(x, "x");
    detail::require_finite(y, "y");
    const SpacePoint s = surface_point(p_, x, y);
    PointClassification pc;
    const Geometric geo = geometric(x, y);
    pc.geometric_count = geo.count;
    pc.label = detail::named_match(special_points(p_), s, eps_);
    try {
      const NormalBundle nb = concurrent_normals(p_, s);
      pc.count = nb.count();
      pc.pattern = nb.pattern;
      for (const Foot& f : nb.details)
        if (f.multiplicity == 2) pc.double_root_sheets.push_back(detail::double_root_sheet(p_, pairing_, s, f.point));
    } catch (const IllConditioned& e) {
      pc.count = -1;
      pc.note = e.what();
    }
    if (pc.count != geo.count) {
      pc.boundary = true;
      if (pc.count < 0) pc.count = geo.count;
    }
    if (!pc.label.empty())
      pc.location = Location::named;
    else if (geo.on_curve)
      pc.location = geo.sheet == lower_ ? Location::on_lower_sheet : Location::on_upper_sheet;
    else
      pc.location = detail::interior_location(geo.count);
    return pc;
  }

 private:
  struct Piece {
    std::vector<double> t;
    std::vector<std::array<double, 2>> xy;
    std::vector<std::array<double, 2>> before, after;  // mirror extensions at axis endpoints
    int sheet = 0;
  };

  // An end on a coordinate axis continues into the neighbouring quadrant as
  // its mirror image, so crossings at the axis are counted once.
  void extend_on_axes(Piece& piece) const {
    const double tol = 1e-9 * (1.0 + reach_);
    auto mirror = [&](const std::array<double, 2>& end, const std::array<double, 2>& next) {
      std::vector<std::array<double, 2>> ext;
      if (std::abs(end[0]) <= tol) ext.push_back({-next[0], next[1]});
      if (std::abs(end[1]) <= tol) ext.push_back({next[0], -next[1]});
      return ext;
    };
    const auto& v = piece.xy;
    if (v.size() < 2) return;
    piece.before = mirror(v.front(), v[1]);
    piece.after = mirror(v.back(), v[v.size() - 2]);
  }

  static bool segments_cross(const std::array<double, 2>& p, const std::array<double, 2>& q,
                             const std::array<double, 2>& r, const std::array<double, 2>& s) {
    const double d1 = orient(p, q, r), d2 = orient(p, q, s), d3 = orient(r, s, p), d4 = orient(r, s, q);
    return ((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0));
  }

  static double orient(const std::array<double, 2>& o, const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  }

  // Whether segment [p0, p1] crosses the segment from the origin to q, with
  // the half-open rule on the side of the line through them.
  static bool crosses(const std::array<double, 2>& q, const std::array<double, 2>& p0, const std::array<double, 2>& p1) {
    const std::array<double, 2> o{0.0, 0.0};
    const bool s0 = orient(o, q, p0) > 0.0, s1 = orient(o, q, p1) > 0.0;
    if (s0 == s1) return false;
    // Both ends of the query segment must be on opposite sides of p0p1.
    const double d0 = orient(p0, p1, o), d1 = orient(p0, p1, q);
    return (d0 > 0.0) != (d1 > 0.0) && d0 != 0.0;
  }

  int crossing_count(const std::array<double, 2>& q) const {
    int crossings = 0;
    for (const Piece& piece : pieces_) {
      const auto& v = piece.xy;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) crossings += crosses(q, v[i], v[i + 1]);
      for (const auto& e : piece.before) crossings += crosses(q, e, v.front());
      for (const auto& e : piece.after) crossings += crosses(q, v.back(), e);
    }
    return 1 + 2 * crossings;
  }

  // Distance from q to the exact curve near the closest polyline vertex, by
  // golden-section search on the parameter. Sets the unit normal at the foot.
  bool near_piece(const Piece& piece, const std::array<double, 2>& q, double tol,
                  std::array<double, 2>& normal) const {
    const auto& v = piece.xy;
    double best = std::numeric_limits<double>::infinity();
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double d = std::hypot(v[i][0] - q[0], v[i][1] - q[1]);
      if (d < best) best = d, k = i;
    }
    const std::size_t lo_i = k > 0 ? k - 1 : 0, hi_i = std::min(k + 1, v.size() - 1);
    const double chord = std::hypot(v[hi_i][0] - v[lo_i][0], v[hi_i][1] - v[lo_i][1]);
    if (best > chord + 10.0 * tol) return false;
    auto at = [&](double t) {
      const SpacePoint s = intersection_curve_point(p_, 1, t, Sign::plus, Sign::plus, 1e-9);
      return std::array<double, 2>{s.x, s.y};
    };
    auto dist = [&](double t) {
      const auto s = at(t);
      return std::hypot(s[0] - q[0], s[1] - q[1]);
    };
    double lo = piece.t[lo_i], hi = piece.t[hi_i];
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    double f1 = dist(m1), f2 = dist(m2);
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        hi = m2, m2 = m1, f2 = f1;
        m1 = hi - phi * (hi - lo);
        f1 = dist(m1);
      } else {
        lo = m1, m1 = m2, f1 = f2;
        m2 = lo + phi * (hi - lo);
        f2 = dist(m2);
      }
    }
    const double tm = 0.5 * (lo + hi);
    if (dist(tm) > tol) return false;
    const double h = 1e-6 * (1.0 + std::abs(tm));
    const double t0 = std::max(piece.t.front(), tm - h), t1 = std::min(piece.t.back(), tm + h);
    const auto a0 = at(t0), a1 = at(t1);
    const double len = std::hypot(a1[0] - a0[0], a1[1] - a0[1]);
    if (len == 0.0) return false;
    normal = {-(a1[1] - a0[1]) / len, (a1[0] - a0[0]) / len};
    return true;
  }

  Paraboloid p_;
  double eps_;
  double reach_ = 0.0;
  std::vector<Piece> pieces_;
  std::optional<std::array<double, 2>> e_, g_;
  SheetPairing pairing_;
  int lower_ = 1;
  CaseClass case_;
};

inline PointClassification classify_on_surface(const Paraboloid& p, double x, double y, double eps = 1e-7) {
  return SurfaceClassifier(p, std::hypot(x, y) + 1.0, eps).classify(x, y);
}

/// Normal counts along curves 16..19 relative to H_i (16, 17) and K_i
/// (18, 19). `position` is "above", "at" or "below".
inline int lemma_expected_count(int curve_id, const std::string& position) {
  static const std::map<int, std::array<int, 3>> table{
      {16, {2, 2, 2}}, {17, {3, 2, 3}}, {18, {2, 2, 4}}, {19, {3, 2, 1}}};
  const auto it = table.find(curve_id);
  if (it == table.end()) throw InvalidArgument("lemma curves are 16..19, got " + std::to_string(curve_id));
  if (position == "above") return it->second[0];
  if (position == "at") return it->second[1];
  if (position == "below") return it->second[2];
  throw InvalidArgument("position must be above, at or below, got '" + position + "'");
}

/// `count` points on curve 16..19 above, at or below its anchor (H_i or
/// K_i), both branches. Height decreases with t on all four curves, so
/// "below" is the parameter span between the anchor and the curve's upper
/// end and "above" a span of the same length beyond the anchor.
inline std::vector<SpacePoint> lemma_samples(const Paraboloid& p, int curve_id, const std::string& position, int count) {
  lemma_expected_count(curve_id, position);  // validates both arguments
  if (count < 1) throw InvalidArgument("lemma_samples needs count >= 1");
  const double anchor = plane_curve_anchor(p, curve_id);
  const double span = plane_curve_upper(p, curve_id) - anchor;
  std::vector<SpacePoint> out;
  for (int k = 0; k < count; ++k) {
    const Sign s = k % 2 == 0 ? Sign::plus : Sign::minus;
    const double f = 0.02 + 0.96 * (k / 2 + 0.5) / ((count + 1) / 2);
    double t = anchor;
    if (position == "below") t = anchor + f * span;
    if (position == "above") t = anchor - f * span;
    out.push_back(plane_curve_point(p, curve_id, t, s, 1e-9));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Region census

struct CensusRegion {
  int count = 0;         ///< normal count of the region
  int cells = 0;
  double x = 0.0, y = 0.0;  ///< a sample inside the region
};

struct CensusReport {
  int samples = 0;        ///< classified points (first quadrant)
  int nx = 0, ny = 0;     ///< quadrant grid
  double x_max = 0.0, y_max = 0.0;
  std::uint64_t seed = 0;
  int masked = 0;         ///< cells left out: on a curve, near E_i, or unresolved
  int disagreements = 0;  ///< samples where the geometric and algebraic counts differ
  std::vector<CensusRegion> regions;
  std::map<int, int> regions_by_count;
};

namespace detail {

// Uniform in [0, 1) from the top 53 bits, identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Samples a jittered grid over the first quadrant of the (x, y) chart,
/// classifies each sample, mirrors the labels into the other quadrants and
/// counts 4-connected components of equal normal count. Cells within 2.5
/// cell diagonals of E_i are masked: four regions meet there and the grid
/// cannot resolve which of them touch. Where a region is thinner than a
/// cell (a curve tangent to an axis) its cells can fall apart into
/// islands; components of equal count within four cells of each other are
/// joined when the segment between their samples crosses no curve.
inline CensusReport region_census(const Paraboloid& p, int samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("census needs at least one sample");
  const double a = p.a();
  const auto pts = special_points(p);
  double y_feature = 0.0;
  for (const char* l : {"F1", "H1", "G1"}) {
    const auto np = find_point(pts, l);
    if (np && np->position) y_feature = std::max(y_feature, std::abs(np->position->y));
  }
  CensusReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.x_max = 1.4 * 2.0 * std::numbers::sqrt2 / a;
  rep.y_max = std::min(rep.x_max, 1.4 * y_feature);
  rep.ny = std::max(1, static_cast<int>(std::lround(std::sqrt(samples * rep.y_max / rep.x_max))));
  rep.nx = std::max(1, samples / rep.ny);
  const double hx = rep.x_max / rep.nx, hy = rep.y_max / rep.ny;

  const SurfaceClassifier sc(p, std::hypot(rep.x_max, rep.y_max) + 1.0);
  std::optional<std::array<double, 2>> e;
  if (const auto ep = e_points(p)[0].position) e = std::array<double, 2>{std::abs(ep->x), std::abs(ep->y)};
  const double mask_r = 2.5 * std::hypot(hx, hy);

  std::mt19937_64 rng(seed);
  std::vector<int> quad(static_cast<std::size_t>(rep.nx) * rep.ny, -1);
  std::vector<std::array<double, 2>> where(quad.size());
  for (int j = 0; j < rep.ny; ++j)
    for (int i = 0; i < rep.nx; ++i) {
      const double x = (i + 0.5 + 0.5 * (detail::unit_uniform(rng) - 0.5)) * hx;
      const double y = (j + 0.5 + 0.5 * (detail::unit_uniform(rng) - 0.5)) * hy;
      const std::size_t k = static_cast<std::size_t>(j) * rep.nx + i;
      where[k] = {x, y};
      if (e && std::hypot(x - (*e)[0], y - (*e)[1]) <= mask_r) {
        ++rep.masked;
        continue;
      }
      const PointClassification pc = sc.classify(x, y);
      if (pc.boundary) ++rep.disagreements;
      if (pc.boundary || pc.location == Location::named || pc.count % 2 == 0 || pc.count < 0) {
        ++rep.masked;
        continue;
      }
      quad[k] = pc.count;
    }

  // Full grid of 2 nx by 2 ny cells; cells adjacent across an axis are
  // mirror images of each other.
  const int W = 2 * rep.nx, H = 2 * rep.ny;
  auto qindex = [&](int I, int J) {
    const int i = I < rep.nx ? rep.nx - 1 - I : I - rep.nx;
    const int j = J < rep.ny ? rep.ny - 1 - J : J - rep.ny;
    return static_cast<std::size_t>(j) * rep.nx + i;
  };
  auto sample = [&](int I, int J) {
    const auto& s = where[qindex(I, J)];
    return std::array<double, 2>{I < rep.nx ? -s[0] : s[0], J < rep.ny ? -s[1] : s[1]};
  };
  auto cell = [&](int I, int J) { return static_cast<std::size_t>(J) * W + I; };

  // 4-connected components.
  std::vector<int> comp(static_cast<std::size_t>(W) * H, -1);
  std::vector<CensusRegion> parts;
  std::vector<std::pair<int, int>> stack;
  for (int J = 0; J < H; ++J)
    for (int I = 0; I < W; ++I) {
      const int label = quad[qindex(I, J)];
      if (label < 0 || comp[cell(I, J)] >= 0) continue;
      const int id = static_cast<int>(parts.size());
      CensusRegion reg;
      reg.count = label;
      std::tie(reg.x, reg.y) = std::pair{sample(I, J)[0], sample(I, J)[1]};
      comp[cell(I, J)] = id;
      stack.push_back({I, J});
      while (!stack.empty()) {
        const auto [ci, cj] = stack.back();
        stack.pop_back();
        ++reg.cells;
        const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
        for (int d = 0; d < 4; ++d) {
          const int ni = ci + di[d], nj = cj + dj[d];
          if (ni < 0 || nj < 0 || ni >= W || nj >= H) continue;
          if (comp[cell(ni, nj)] >= 0 || quad[qindex(ni, nj)] != label) continue;
          comp[cell(ni, nj)] = id;
          stack.push_back({ni, nj});
        }
      }
      parts.push_back(reg);
    }

  // Join components of equal count that are within a few cells and see
  // each other without crossing a curve.
  constexpr int reach = 4;
  std::vector<int> parent(parts.size());
  for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = static_cast<int>(k);
  auto find = [&](int k) {
    while (parent[static_cast<std::size_t>(k)] != k) k = parent[static_cast<std::size_t>(k)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(k)])];
    return k;
  };
  for (int J = 0; J < H; ++J)
    for (int I = 0; I < W; ++I) {
      const int c0 = comp[cell(I, J)];
      if (c0 < 0) continue;
      for (int dj = -reach; dj <= reach; ++dj)
        for (int di = -reach; di <= reach; ++di) {
          const int ni = I + di, nj = J + dj;
          if (ni < 0 || nj < 0 || ni >= W || nj >= H) continue;
          const int c1 = comp[cell(ni, nj)];
          if (c1 < 0 || parts[static_cast<std::size_t>(c1)].count != parts[static_cast<std::size_t>(c0)].count) continue;
          const int r0 = find(c0), r1 = find(c1);
          if (r0 == r1) continue;
          if (sc.segment_crossings(sample(I, J), sample(ni, nj)) == 0) parent[static_cast<std::size_t>(std::max(r0, r1))] = std::min(r0, r1);
        }
    }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int root = find(static_cast<int>(k));
    if (root == static_cast<int>(k)) continue;
    parts[static_cast<std::size_t>(root)].cells += parts[k].cells;
    parts[k].cells = 0;
  }
  for (const CensusRegion& reg : parts) {
    if (reg.cells == 0) continue;
    rep.regions.push_back(reg);
    ++rep.regions_by_count[reg.count];
  }
  return rep;
}

}  // namespace caustica
