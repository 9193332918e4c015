#include <gtest/gtest.h>

#include <random>

#include "caustica/normals.hpp"
#include "caustica/oracle.hpp"

using namespace caustica;

TEST(Oracle, AxisExamples) {
  const Paraboloid p(1.0, 4.0);
  EXPECT_EQ(count_from_scan(p, {0.0, 0.0, 5.0}).count, 5);
  const OracleResult low = count_from_scan(p, {0.0, 0.0, 0.1});
  ASSERT_EQ(low.count, 1);
  EXPECT_NEAR(low.feet[0].x, 0.0, 1e-12);
  EXPECT_NEAR(low.feet[0].y, 0.0, 1e-12);
  EXPECT_EQ(count_from_scan(p, {0.0, 0.0, 0.5}).count, 3);
}

TEST(Oracle, FeetMatchSolver) {
  const Paraboloid p(1.0, 4.0);
  const SpacePoint A(0.1, 0.1, 5.0);
  const OracleResult o = count_from_scan(p, A);
  const NormalBundle nb = concurrent_normals(p, A);
  ASSERT_EQ(o.count, 5);
  ASSERT_EQ(nb.count(), 5);
  for (const SpacePoint& f : o.feet) {
    double best = 1e300;
    for (const SpacePoint& g : nb.feet) best = std::min(best, distance(f, g));
    EXPECT_LT(best, 1e-6);
    EXPECT_LT(normal_alignment_residual(p, A, f), 1e-6);
  }
}

TEST(Oracle, TwoFeetInOneCoarseCell) {
  // Two feet 0.03 apart: the corner signs of a 64 or 256 cell agree.
  const Paraboloid p(1.0, 4.0);
  const SpacePoint A(4.10454, 0.182469, 4.84609);
  EXPECT_EQ(critical_points(p, A, 0.0, 64).count, 3);
  EXPECT_EQ(concurrent_normals(p, A).count(), 3);
}

TEST(Oracle, MirrorAndParity) {
  const Paraboloid p(1.0, 4.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dx(-3.0, 3.0), dz(-1.0, 6.0);
  for (int i = 0; i < 100; ++i) {
    const SpacePoint A(dx(rng), dx(rng), dz(rng));
    if (near_multiple_separation(normal_equation(p, A)) < 1e-4) continue;
    const int c = count_from_scan(p, A).count;
    EXPECT_EQ(c % 2, 1);
    EXPECT_EQ(count_from_scan(p, {-A.x, A.y, A.z}).count, c);
    EXPECT_EQ(count_from_scan(p, {A.x, -A.y, A.z}).count, c);
  }
}

TEST(Oracle, RejectsBadResolution) {
  EXPECT_THROW(critical_points(Paraboloid(1.0, 4.0), {0.0, 0.0, 1.0}, 1.0, 1), InvalidArgument);
}

TEST(Oracle, DefaultHalfWidth) {
  const Paraboloid p(1.0, 4.0);
  EXPECT_DOUBLE_EQ(default_half_width(p, {0.0, 0.0, 0.0}), 4.0);
  EXPECT_DOUBLE_EQ(default_half_width(p, {3.0, -5.0, 2.0}), 20.0);
  EXPECT_DOUBLE_EQ(default_half_width(p, {0.0, 0.0, 8.0}), 16.0);
}
