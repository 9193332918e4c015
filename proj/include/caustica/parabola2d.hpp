#pragma once
//
// Concurrent normals of the plane parabola y = a x^2 / 2. Normal feet have
// x-coordinates solving a^2 x^3 - 2(a m - 1) x - 2 l = 0; the repeated-root
// locus is Neile's semicubical parabola (a y - 1)^3 = 27/8 a^2 x^2.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "caustica/geometry.hpp"
#include "caustica/polyroots.hpp"

namespace caustica::parabola2d {

class Parabola2 {
 public:
  explicit Parabola2(double a) : a_(a) {
    if (!std::isfinite(a) || a <= 0.0) throw InvalidArgument("parabola coefficient must be positive and finite");
  }
  double a() const noexcept { return a_; }
  double height(double x) const noexcept { return 0.5 * a_ * x * x; }

 private:
  double a_;
};

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;

  constexpr PlanePoint() = default;
  PlanePoint(double x_, double y_) : x(x_), y(y_) {
    detail::require_finite(x, "x");
    detail::require_finite(y, "y");
  }
};

enum class NeileSide { below, on, above };

/// Roots of the foot cubic together with its depressed form x^3 + p x + q.
struct CubicSolution {
  RootSet roots;
  double p = 0.0;
  double q = 0.0;
  double discriminant = 0.0;  ///< -4 p^3 - 27 q^2
  bool on_boundary = false;   ///< discriminant inside the zero band
};

/// Zero band for -4 p^3 - 27 q^2. `p_error` is the absolute uncertainty of
/// p itself (p is usually a difference of larger terms).
inline double discriminant_band(double p, double q, double p_error = 0.0) {
  return 1e-10 * (4.0 * std::abs(p * p * p) + 27.0 * q * q) + 12.0 * p * p * p_error;
}

/// Solves x^3 + p x + q = 0 with multiplicities decided by the discriminant.
inline CubicSolution solve_depressed_cubic(double p, double q, double p_error = 0.0) {
  CubicSolution s;
  s.p = p;
  s.q = q;
  s.discriminant = -4.0 * p * p * p - 27.0 * q * q;
  const double band = discriminant_band(p, q, p_error);
  s.on_boundary = std::abs(s.discriminant) <= band;

  auto polish = [&](double x) {
    for (int i = 0; i < 3; ++i) {
      const double f = (x * x + p) * x + q;
      const double d = 3.0 * x * x + p;
      if (d == 0.0) break;
      const double next = x - f / d;
      if (!std::isfinite(next) || std::abs(next - x) > 1e-6 * (1.0 + std::abs(x))) break;
      x = next;
    }
    return x;
  };

  std::vector<Root>& r = s.roots.roots;
  if (s.on_boundary) {
    // Both terms small, not just their difference: the cusp, a triple root.
    if (4.0 * std::abs(p * p * p) + 27.0 * q * q <= band) {
      r.push_back({0.0, 3});
    } else {
      const double simple = 3.0 * q / p;
      const double twice = -1.5 * q / p;
      r.push_back({polish(simple), 1});
      r.push_back({twice, 2});
    }
  } else if (s.discriminant > 0.0) {
    // Three distinct real roots: trigonometric form (p < 0 here).
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) r.push_back({polish(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0)), 1});
  } else {
    // One real root, Cardano with the cancellation-free sign choice.
    const double half_q = 0.5 * q;
    const double root = std::sqrt(half_q * half_q + p * p * p / 27.0);
    const double big = -std::cbrt(half_q + std::copysign(root, half_q));
    const double x = big != 0.0 ? big - p / (3.0 * big) : 0.0;
    r.push_back({polish(x), 1});
  }
  std::sort(r.begin(), r.end(), [](const Root& x, const Root& y) { return x.value < y.value; });
  double residual = 0.0;
  for (const Root& root : r) {
    const double x = root.value;
    const double mag = std::abs(x * x * x) + std::abs(p * x) + std::abs(q);
    if (mag > 0.0) residual = std::max(residual, std::abs((x * x + p) * x + q) / mag);
  }
  s.roots.residual = residual;
  return s;
}

/// x-coordinates of the feet of the normals through A = (l, m).
inline CubicSolution normal_feet_2d(const Parabola2& par, const PlanePoint& A) {
  const double a = par.a();
  const double p_error = 1e-12 * 2.0 * (std::abs(a * A.y) + 1.0) / (a * a);
  return solve_depressed_cubic(-2.0 * (a * A.y - 1.0) / (a * a), -2.0 * A.x / (a * a), p_error);
}

inline NeileSide neile_classify(const Parabola2& par, const PlanePoint& A) {
  const CubicSolution s = normal_feet_2d(par, A);
  if (s.on_boundary) return NeileSide::on;
  return s.discriminant > 0.0 ? NeileSide::above : NeileSide::below;
}

/// (a m - 1)^3 - 27/8 a^2 l^2, the left side of Neile's curve.
inline double neile_residual(const Parabola2& par, const PlanePoint& A) {
  const double a = par.a();
  const double w = a * A.y - 1.0;
  return w * w * w - 27.0 / 8.0 * a * a * A.x * A.x;
}

struct Count2D {
  int count = 0;
  bool on_boundary = false;
};

inline Count2D count_normals_2d(const Parabola2& par, const PlanePoint& A) {
  const CubicSolution s = normal_feet_2d(par, A);
  return {static_cast<int>(s.roots.size()), s.on_boundary};
}

/// Intersections (+-2 sqrt 2 / a, 4 / a) of the parabola with Neile's curve.
inline std::array<PlanePoint, 2> c_points(const Parabola2& par) {
  const double a = par.a();
  const double x = 2.0 * std::numbers::sqrt2 / a;
  return {PlanePoint{x, 4.0 / a}, PlanePoint{-x, 4.0 / a}};
}

/// Point of Neile's curve over parameter s >= 0 (s = a y - 1), sign picks
/// the branch.
inline PlanePoint neile_point(const Parabola2& par, double s, Sign sign) {
  const double a = par.a();
  const double x = std::sqrt(8.0 / 27.0) * std::pow(std::max(s, 0.0), 1.5) / a;
  return {apply(sign, x), (s + 1.0) / a};
}

}  // namespace caustica::parabola2d
