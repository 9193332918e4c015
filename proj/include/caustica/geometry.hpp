#pragma once
//
// The elliptical paraboloid z = (a x^2 + b y^2) / 2 with 0 < a < b, its
// parabolic (u, v) chart, inner normals and principal curvature centers.
//

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "caustica/error.hpp"

namespace caustica {

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NonFinite(std::string(what) + " is not finite: " + fmt_double(v));
}

}  // namespace detail

/// A point (or free vector) in space. Coordinates are always finite.
struct SpacePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr SpacePoint() = default;
  SpacePoint(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    detail::require_finite(x, "x");
    detail::require_finite(y, "y");
    detail::require_finite(z, "z");
  }

  friend SpacePoint operator+(const SpacePoint& p, const SpacePoint& q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
  friend SpacePoint operator-(const SpacePoint& p, const SpacePoint& q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
  friend SpacePoint operator*(double s, const SpacePoint& p) { return {s * p.x, s * p.y, s * p.z}; }
  friend bool operator==(const SpacePoint&, const SpacePoint&) = default;
};

inline double dot(const SpacePoint& p, const SpacePoint& q) { return p.x * q.x + p.y * q.y + p.z * q.z; }

inline SpacePoint cross(const SpacePoint& p, const SpacePoint& q) {
  return {p.y * q.z - p.z * q.y, p.z * q.x - p.x * q.z, p.x * q.y - p.y * q.x};
}

inline double norm(const SpacePoint& p) { return std::sqrt(dot(p, p)); }

inline double distance(const SpacePoint& p, const SpacePoint& q) { return norm(p - q); }

/// Mirror sign used to pick one of the four symmetric copies of a point
/// given by squared coordinates.
enum class Sign : int { minus = -1, plus = 1 };

inline double apply(Sign s, double magnitude) {
  // Keeps zero unsigned so mirrored copies compare and print identically.
  if (magnitude == 0.0) return 0.0;
  return s == Sign::plus ? magnitude : -magnitude;
}

inline Sign sign_of(double v) { return v < 0.0 ? Sign::minus : Sign::plus; }

/// z = (a x^2 + b y^2) / 2 with 0 < a < b.
class Paraboloid {
 public:
  Paraboloid(double a, double b) : a_(a), b_(b) {
    using R = InvalidParaboloid::Reason;
    if (!std::isfinite(a) || !std::isfinite(b))
      throw InvalidParaboloid(R::non_finite, "paraboloid coefficients must be finite");
    if (a <= 0.0 || b <= 0.0)
      throw InvalidParaboloid(R::non_elliptic, "only elliptical paraboloids (a > 0, b > 0) are supported, got a=" +
                                                   detail::fmt_double(a) + " b=" + detail::fmt_double(b));
    if (a == b)
      throw InvalidParaboloid(R::equal_curvatures, "a == b is a paraboloid of revolution and is not supported");
    if (a > b)
      throw InvalidParaboloid(R::unordered, "coefficients must satisfy a < b, got a=" + detail::fmt_double(a) +
                                                " b=" + detail::fmt_double(b));
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  double height(double x, double y) const noexcept { return 0.5 * (a_ * x * x + b_ * y * y); }

  /// Absolute residual of the surface equation, scaled by (1 + |z|).
  double residual(const SpacePoint& s) const noexcept {
    return std::abs(s.z - height(s.x, s.y)) / (1.0 + std::abs(s.z));
  }

  bool contains(const SpacePoint& s, double tol = 1e-9) const noexcept { return residual(s) <= tol; }

 private:
  double a_;
  double b_;
};

/// Curvilinear coordinates of the paraboloid. The valid chart is the
/// rectangle u >= 1/a, -1/a <= v <= -1/b; each (u, v) stands for four points.
struct ParabolicCoords {
  double u = 0.0;
  double v = 0.0;

  bool in_domain(const Paraboloid& p, double tol = 1e-12) const noexcept {
    const double a = p.a(), b = p.b();
    const double slack = tol * (1.0 + std::abs(u) + std::abs(v));
    return u >= 1.0 / a - slack && v >= -1.0 / a - slack && v <= -1.0 / b + slack;
  }
};

struct CurvatureData {
  double H = 0.0;   ///< mean curvature
  double K = 0.0;   ///< Gaussian curvature
  double R1 = 0.0;  ///< smaller principal radius
  double R2 = 0.0;  ///< larger principal radius
};

namespace detail {

// Clamps a radicand that is negative only by rounding; throws otherwise.
inline double checked_radicand(double value, double scale, double tol, const char* what) {
  if (value >= 0.0) return value;
  if (value >= -tol * (1.0 + std::abs(scale))) return 0.0;
  throw DomainError(std::string(what) + " radicand is negative: " + fmt_double(value));
}

inline void require_on_surface(const Paraboloid& p, const SpacePoint& s, double tol) {
  if (!p.contains(s, tol))
    throw NotOnSurface("point (" + fmt_double(s.x) + ", " + fmt_double(s.y) + ", " + fmt_double(s.z) +
                       ") is not on the paraboloid (residual " + fmt_double(p.residual(s)) + ")");
}

}  // namespace detail

inline SpacePoint surface_point(const Paraboloid& p, double x, double y) {
  detail::require_finite(x, "x");
  detail::require_finite(y, "y");
  return {x, y, p.height(x, y)};
}

/// Squared coordinates and height of the parabolic parametrization.
inline std::array<double, 3> parabolic_squares(const Paraboloid& p, const ParabolicCoords& c) {
  const double a = p.a(), b = p.b(), u = c.u, v = c.v;
  const double x2 = b * (a * u - 1.0) * (a * v + 1.0) / (a * a * (b - a));
  const double y2 = -a * (b * u - 1.0) * (b * v + 1.0) / (b * b * (b - a));
  const double z = (a * b * (u - v) - a - b) / (2.0 * a * b);
  return {x2, y2, z};
}

inline SpacePoint surface_from_parabolic(const Paraboloid& p, const ParabolicCoords& c, Sign sign_x = Sign::plus,
                                         Sign sign_y = Sign::plus, double tol = 1e-12) {
  detail::require_finite(c.u, "u");
  detail::require_finite(c.v, "v");
  if (!c.in_domain(p, tol))
    throw DomainError("parabolic coordinates (" + detail::fmt_double(c.u) + ", " + detail::fmt_double(c.v) +
                      ") are outside u >= 1/a, -1/a <= v <= -1/b");
  const auto [x2, y2, z] = parabolic_squares(p, c);
  const double scale = std::abs(z) + std::abs(c.u) + std::abs(c.v);
  const double xr = detail::checked_radicand(x2, scale, tol, "x^2");
  const double yr = detail::checked_radicand(y2, scale, tol, "y^2");
  return {apply(sign_x, std::sqrt(xr)), apply(sign_y, std::sqrt(yr)), z};
}

/// Inverse of the parabolic chart. u - v comes from the height, u v from the
/// x^2 product; u and -v are then the larger and smaller roots of
/// w^2 - (u - v) w - u v = 0.
inline ParabolicCoords parabolic_from_surface(const Paraboloid& p, const SpacePoint& s, double tol = 1e-9) {
  detail::require_on_surface(p, s, tol);
  const double a = p.a(), b = p.b();
  const double diff = (2.0 * a * b * s.z + a + b) / (a * b);  // u - v
  const double px = a * a * (b - a) * s.x * s.x / b;           // (au - 1)(av + 1)
  const double prod = (px + 1.0 - a * diff) / (a * a);         // u v
  const double disc = std::max(0.0, diff * diff + 4.0 * prod);
  double u = 0.5 * (diff + std::sqrt(disc));
  double v = prod / u;
  // Rounding can push a boundary point a hair outside the rectangle.
  u = std::max(u, 1.0 / a);
  v = std::min(std::max(v, -1.0 / a), -1.0 / b);
  return {u, v};
}

/// Inner normal (-a x, -b y, 1), unnormalized.
inline SpacePoint normal_direction(const Paraboloid& p, const SpacePoint& s, double tol = 1e-9) {
  detail::require_on_surface(p, s, tol);
  return {-p.a() * s.x, -p.b() * s.y, 1.0};
}

inline CurvatureData curvature_at(const Paraboloid& p, double x, double y) {
  detail::require_finite(x, "x");
  detail::require_finite(y, "y");
  const double a = p.a(), b = p.b();
  const double w = 1.0 + a * a * x * x + b * b * y * y;
  CurvatureData c;
  c.H = (a + b + a * a * b * x * x + a * b * b * y * y) / (2.0 * std::pow(w, 1.5));
  c.K = a * b / (w * w);
  const double gap = c.H * c.H - c.K;
  if (gap < -1e-12 * c.H * c.H) throw Error("curvature invariant H^2 >= K violated");
  const double root = std::sqrt(std::max(0.0, gap));
  c.R1 = 1.0 / (c.H + root);
  // 1 / (H - root) rewritten to avoid cancellation.
  c.R2 = (c.H + root) / c.K;
  return c;
}

/// Centers of principal curvature at the surface point over (x, y); the
/// first belongs to R1, the second to R2.
inline std::array<SpacePoint, 2> curvature_centers(const Paraboloid& p, double x, double y) {
  const CurvatureData c = curvature_at(p, x, y);
  const SpacePoint s = surface_point(p, x, y);
  const SpacePoint n{-p.a() * x, -p.b() * y, 1.0};
  const double len = norm(n);
  return {s + (c.R1 / len) * n, s + (c.R2 / len) * n};
}

}  // namespace caustica
