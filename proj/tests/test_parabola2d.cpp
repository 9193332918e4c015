#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "caustica/parabola2d.hpp"

using namespace caustica;
using namespace caustica::parabola2d;

namespace {

// Intersections of the parabola with the hyperbola y = m - (x - l) / (a x),
// counted by sign changes on a dense grid.
int hyperbola_count(double a, double l, double m) {
  auto f = [&](double x) { return 0.5 * a * x * x * a * x - (m * a * x - (x - l)); };
  const double R = 4.0 * (1.0 + std::abs(l) + std::abs(m)) / std::min(a, 1.0) + 4.0;
  const int n = 200000;
  int count = 0;
  double prev = f(-R);
  for (int i = 1; i <= n; ++i) {
    const double x = -R + 2.0 * R * i / n;
    const double v = f(x);
    if ((prev < 0) != (v < 0)) ++count;
    prev = v;
  }
  return count;
}

}  // namespace

TEST(Parabola2d, FeetExamples) {
  const Parabola2 p(1.0);
  const CubicSolution focus = normal_feet_2d(p, {0, 1});
  ASSERT_EQ(focus.roots.size(), 1u);
  EXPECT_EQ(focus.roots.roots[0].multiplicity, 3);
  const CubicSolution vertex = normal_feet_2d(p, {0, 0});
  ASSERT_EQ(vertex.roots.size(), 1u);
  EXPECT_EQ(vertex.roots.roots[0].multiplicity, 1);
  EXPECT_DOUBLE_EQ(vertex.p, 2.0);
  const CubicSolution above = normal_feet_2d(p, {0, 5});
  ASSERT_EQ(above.roots.size(), 3u);
  EXPECT_NEAR(above.roots.roots[0].value, -std::sqrt(8.0), 1e-14);
  EXPECT_NEAR(above.roots.roots[1].value, 0.0, 1e-14);
  EXPECT_NEAR(above.roots.roots[2].value, std::sqrt(8.0), 1e-14);
}

TEST(Parabola2d, NeileClassify) {
  const Parabola2 p(1.0);
  EXPECT_EQ(neile_classify(p, {0, 1}), NeileSide::on);
  EXPECT_EQ(neile_classify(p, {0, 0}), NeileSide::below);
  EXPECT_EQ(neile_classify(p, {0, 5}), NeileSide::above);
}

TEST(Parabola2d, Counts) {
  const Parabola2 p(1.0);
  for (const PlanePoint& c : c_points(p)) {
    const Count2D n = count_normals_2d(p, c);
    EXPECT_EQ(n.count, 2);
    EXPECT_TRUE(n.on_boundary);
  }
  EXPECT_EQ(count_normals_2d(p, {0, 1}).count, 1);
  EXPECT_EQ(count_normals_2d(Parabola2(2.0), {1, 10}).count, 3);
  EXPECT_EQ(hyperbola_count(2.0, 1, 10), 3);
  // Just past the cusp: the discriminant is tiny but well outside rounding.
  EXPECT_EQ(count_normals_2d(p, {0, 1.0001}).count, 3);
  EXPECT_FALSE(count_normals_2d(p, {0, 1.0001}).on_boundary);
  EXPECT_EQ(count_normals_2d(p, {1e-7, 1.0}).count, 1);
  EXPECT_TRUE(count_normals_2d(Parabola2(3.0), {0, 1.0 / 3.0}).on_boundary);
}

TEST(Parabola2d, CPoints) {
  const auto c1 = c_points(Parabola2(1.0));
  EXPECT_NEAR(c1[0].x, 2.8284271247461903, 1e-15);
  EXPECT_DOUBLE_EQ(c1[0].y, 4.0);
  const auto c2 = c_points(Parabola2(2.0));
  EXPECT_NEAR(c2[0].x, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c2[1].x, -std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(c2[0].y, 2.0);
  for (double a : {0.3, 1.0, 7.0}) {
    const Parabola2 p(a);
    for (const PlanePoint& c : c_points(p)) {
      EXPECT_NEAR(c.y - p.height(c.x), 0.0, 1e-12 * c.y);
      EXPECT_NEAR(neile_residual(p, c), 0.0, 1e-12 * 27.0);
    }
  }
}

TEST(Parabola2d, AgreesWithHyperbolaConstruction) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> da(0.2, 3.0), dl(-4, 4), dm(-2, 8);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = da(rng), l = dl(rng), m = dm(rng);
    if (std::abs(l) < 1e-3) continue;
    const Parabola2 p(a);
    const CubicSolution s = normal_feet_2d(p, {l, m});
    if (std::abs(s.discriminant) < 1e-3 * (1 + std::abs(s.p * s.p * s.p) + s.q * s.q)) continue;
    ASSERT_EQ(count_normals_2d(p, {l, m}).count, hyperbola_count(a, l, m)) << a << " " << l << " " << m;
    ASSERT_EQ(count_normals_2d(p, {l, m}).count, count_normals_2d(p, {-l, m}).count);
    ++checked;
  }
  EXPECT_GT(checked, 900);
}

TEST(Parabola2d, DiscriminantZeroOnNeile) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ds(0.0, 6.0);
  for (double a : {0.5, 1.0, 2.0}) {
    const Parabola2 p(a);
    for (int i = 0; i < 200; ++i) {
      const PlanePoint A = neile_point(p, ds(rng), i % 2 ? Sign::plus : Sign::minus);
      EXPECT_EQ(neile_classify(p, A), NeileSide::on);
      EXPECT_LT(std::abs(neile_residual(p, A)), 1e-9 * (1 + std::pow(a * A.y, 3)));
    }
  }
}

TEST(Parabola2d, NormalsTouchNeile) {
  // The normal at foot x0 touches Neile's curve at the center of curvature.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dx(-3, 3);
  for (double a : {0.5, 1.0, 2.0}) {
    const Parabola2 p(a);
    for (int i = 0; i < 200; ++i) {
      const double x0 = dx(rng);
      const double y0 = p.height(x0);
      // Evolute point of y = a x^2 / 2.
      const double ex = -a * a * x0 * x0 * x0;
      const double ey = y0 + (1 + a * a * x0 * x0) / a;
      EXPECT_LT(std::abs(neile_residual(p, {ex, ey})), 1e-8 * (1 + std::pow(a * ey, 3)));
      // Normal direction (-a x0, 1) and the tangent of Neile's curve at that point are parallel.
      const double s = a * ey - 1;
      const double dxds = std::sqrt(8.0 / 27.0) * 1.5 * std::sqrt(s) / a * (ex < 0 ? -1 : 1);
      const double dyds = 1.0 / a;
      const double cross = -a * x0 * dyds - 1.0 * dxds;
      EXPECT_LT(std::abs(cross), 1e-8 * (1 + std::abs(dxds) + std::abs(a * x0)));
    }
  }
}

TEST(Parabola2d, TransitionsAcrossNeile) {
  for (double a : {0.5, 1.0, 2.0}) {
    const Parabola2 p(a);
    const int n = 200;
    const double X = 6.0 / a, Y = 8.0 / a;
    int disagreements = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const PlanePoint A{-X + 2 * X * (i + 0.5) / n, -Y / 4 + Y * (j + 0.5) / n};
        const Count2D c = count_normals_2d(p, A);
        const double r = neile_residual(p, A);
        const int expected = r > 0 ? 3 : 1;
        if (!c.on_boundary && c.count != expected) ++disagreements;
      }
    EXPECT_EQ(disagreements, 0) << "a=" << a;
  }
}
