#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "caustica/normals.hpp"

using namespace caustica;

namespace {

void expect_valid_feet(const Paraboloid& p, const NormalBundle& nb) {
  for (const SpacePoint& f : nb.feet) {
    EXPECT_LT(p.residual(f), 1e-9);
    EXPECT_LT(normal_alignment_residual(p, nb.query, f), 1e-8);
  }
}

}  // namespace

TEST(NormalEquation, LeadingCoefficient) {
  const Paraboloid p(1, 4);
  const Polynomial q = normal_equation(p, {1, 1, 0});
  EXPECT_EQ(q.degree(), 5);
  EXPECT_DOUBLE_EQ(q.leading(), 8.0);
  EXPECT_THROW(normal_equation(p, {0, 1, 0}), DegenerateQuery);
}

TEST(NormalEquation, FiveRootsHigh) {
  const Paraboloid p(1, 4);
  const Polynomial q = normal_equation(p, {0.1, 0.1, 5});
  const double bound = q.cauchy_bound();
  EXPECT_EQ(sturm_count(q, -bound, bound), 5);
  const RootSet r = isolate_real_roots(q);
  ASSERT_EQ(r.size(), 5u);
  for (const Root& t : r.roots) {
    const SpacePoint B{0.1 / (1 + t.value), 0.1 / (1 + 4 * t.value), 5 + t.value};
    EXPECT_LT(p.residual(B), 1e-10);
  }
}

TEST(Concurrent, AxisQueries) {
  const Paraboloid p(1, 4);
  EXPECT_EQ(concurrent_normals(p, {0, 0, 0.1}).count(), 1);
  EXPECT_EQ(concurrent_normals(p, {0, 0, 0.5}).count(), 3);
  EXPECT_EQ(concurrent_normals(p, {0, 0, 5}).count(), 5);
  const NormalBundle vb = concurrent_normals(p, {0, 0, 0.25});
  EXPECT_EQ(vb.count(), 1);
  EXPECT_TRUE(vb.on_boundary());
  const NormalBundle va = concurrent_normals(p, {0, 0, 1.0});
  EXPECT_EQ(va.count(), 3);
  expect_valid_feet(p, concurrent_normals(p, {0, 0, 5}));
}

TEST(Concurrent, CurvatureCenterDoubleRoot) {
  const Paraboloid p(1, 4);
  for (int k = 0; k < 2; ++k) {
    const SpacePoint A = curvature_centers(p, 0.3, 0.2)[static_cast<std::size_t>(k)];
    const NormalBundle nb = concurrent_normals(p, A);
    bool found = false;
    for (const Foot& f : nb.details)
      if (f.multiplicity >= 2 && distance(f.point, surface_point(p, 0.3, 0.2)) < 1e-6) found = true;
    EXPECT_TRUE(found) << "center " << k;
  }
}

// Feet near a coordinate plane put the double root next to a pole, and far
// feet give a near-double pair the Sturm chain may split.
TEST(Concurrent, CurvatureCentersNearPolesAndFar) {
  const Paraboloid p(1, 4);
  const double feet[][2] = {{-0.0054310706117211005, 1.4139636342745097},
                            {-0.0011111, 1.95936},
                            {-1.90719, 0.00643672},
                            {-1.9365823011277339, -1.5178746472102946},
                            {1e-7, 0.8}};
  for (const auto& xy : feet) {
    const SpacePoint B = surface_point(p, xy[0], xy[1]);
    for (const SpacePoint& A : curvature_centers(p, xy[0], xy[1])) {
      const NormalBundle nb = concurrent_normals(p, A);
      double best = 1e300;
      for (const Foot& f : nb.details)
        if (f.multiplicity >= 2) best = std::min(best, distance(f.point, B));
      EXPECT_LT(best, 1e-6) << xy[0] << ", " << xy[1];
    }
  }
}

TEST(Concurrent, RandomFeetValidAndSymmetric) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dxy(-5, 5), dz(-2, 8);
  const Paraboloid p(1, 4);
  for (int i = 0; i < 2000; ++i) {
    const SpacePoint A{dxy(rng), dxy(rng), dz(rng)};
    const NormalBundle nb = concurrent_normals(p, A);
    ASSERT_GE(nb.count(), 1);
    ASSERT_LE(nb.count(), 5);
    expect_valid_feet(p, nb);
    if (!nb.on_boundary()) {
      ASSERT_EQ(nb.count() % 2, 1);
      const NormalBundle mirror = concurrent_normals(p, {-A.x, A.y, A.z});
      ASSERT_EQ(mirror.count(), nb.count());
      for (std::size_t k = 0; k < nb.feet.size(); ++k) {
        ASSERT_NEAR(mirror.feet[k].x, -nb.feet[k].x, 1e-9 * (1 + std::abs(nb.feet[k].x)));
        ASSERT_NEAR(mirror.feet[k].y, nb.feet[k].y, 1e-9 * (1 + std::abs(nb.feet[k].y)));
      }
    }
  }
}

TEST(Concurrent, RootIntervals) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> dxy(-5, 5), dz(-2, 8);
  const Paraboloid p(1, 4);
  for (int i = 0; i < 2000; ++i) {
    const SpacePoint A{dxy(rng), dxy(rng), dz(rng)};
    const NormalBundle nb = concurrent_normals(p, A);
    int left = 0, mid = 0, right = 0;
    for (const Root& r : nb.roots.roots) {
      if (r.value < -1.0) left += r.multiplicity;
      else if (r.value < -0.25) mid += r.multiplicity;
      else right += r.multiplicity;
    }
    ASSERT_EQ(right, 1);
    ASSERT_LE(left, 2);
    ASSERT_LE(mid, 2);
  }
}

TEST(Concurrent, PlaneQueries) {
  const Paraboloid p(1, 4);
  // In plane x = 0, above both vertices: feet in-plane plus an off-plane pair.
  const NormalBundle nb = concurrent_normals(p, {0, 0.1, 5});
  EXPECT_EQ(nb.kind, QueryKind::plane_x0);
  expect_valid_feet(p, nb);
  EXPECT_EQ(nb.count(), 5);
  EXPECT_EQ(nb.degenerate_feet.size(), 2u);
  const NormalBundle ny = concurrent_normals(p, {0.1, 0, 5});
  EXPECT_EQ(ny.kind, QueryKind::plane_y0);
  expect_valid_feet(p, ny);
  EXPECT_EQ(ny.count(), 5);
}

TEST(Concurrent, PlaneAgreesWithNearbyGeneral) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> dxy(-3, 3), dz(-1, 6);
  const Paraboloid p(1, 4);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    const double m = dxy(rng), n = dz(rng);
    const NormalBundle plane = concurrent_normals(p, {0, m, n});
    if (plane.on_boundary()) continue;
    const NormalBundle near = concurrent_normals(p, {1e-6, m, n});
    if (near.on_boundary()) continue;
    EXPECT_EQ(plane.count(), near.count()) << m << " " << n;
    ++checked;
  }
  EXPECT_GT(checked, 400);
}
