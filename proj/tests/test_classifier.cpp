#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "caustica/classifier.hpp"

using namespace caustica;

TEST(Classifier, CaseOf) {
  EXPECT_EQ(case_of(Paraboloid(1, 1.5)).id, CaseId::case1);
  EXPECT_EQ(case_of(Paraboloid(1, 2.5)).id, CaseId::case2);
  EXPECT_EQ(case_of(Paraboloid(1, 3)).id, CaseId::case3);
  EXPECT_EQ(case_of(Paraboloid(1, 4)).id, CaseId::case4);
  const CaseClass two = case_of(Paraboloid(1, 2));
  EXPECT_EQ(two.id, CaseId::case1);
  EXPECT_TRUE(two.near_2a);
  EXPECT_EQ(case_of(Paraboloid(1, 3 + 1e-12)).id, CaseId::case3);
  EXPECT_EQ(case_of(Paraboloid(1, 3 + 1e-6)).id, CaseId::case4);
  EXPECT_STREQ(to_string(CaseId::case4), "Case4");
}

TEST(Classifier, ClassifyPoint) {
  const Paraboloid p(1, 4);
  PointClassification c = classify_point(p, {0, 0, 0.1});
  EXPECT_EQ(c.count, 1);
  EXPECT_EQ(c.location, Location::interior_below);

  c = classify_point(p, {0.3, 0.4, 3.0});
  EXPECT_EQ(c.location, detail::interior_location(c.count));

  const auto h = find_point(special_points(p), "H1");
  c = classify_point(p, *h->position);
  EXPECT_EQ(c.count, 2);
  EXPECT_EQ(c.location, Location::named);
  EXPECT_NE(c.label.find("H1"), std::string::npos);

  // Axis exceptions at the two cusp vertices.
  EXPECT_EQ(classify_point(p, {0, 0, 0.25}).count, 1);
  EXPECT_EQ(classify_point(p, {0, 0, 1.0}).count, 3);
}

TEST(Classifier, NodalPointsHaveTwoDoubleRoots) {
  const Paraboloid p(1, 4);
  const NodalParametrization np = nodal_parametrization(p);
  for (double f : {0.2, 0.5, 0.8}) {
    const double t = np.delta * (1.0 + f);
    const PointClassification c = classify_point(p, nodal_point_caspari(p, t, Sign::plus, Sign::plus));
    EXPECT_EQ(c.count, 3) << t;
    EXPECT_EQ(c.location, Location::on_nodal) << t;
  }
}

TEST(Classifier, SheetOfDoubleRoot) {
  const Paraboloid p(1, 4);
  const int lower = lower_sheet(p);
  // A point on the lower sheet below the upper one: 1 | 3 boundary.
  const SpacePoint c = curvature_centers(p, 0.05, 0.02)[0];
  const PointClassification pc = classify_point(p, c);
  ASSERT_EQ(pc.double_root_sheets.size(), 1u);
  EXPECT_EQ(pc.count, 2);
  EXPECT_EQ(pc.location, pc.double_root_sheets[0] == lower ? Location::on_lower_sheet : Location::on_upper_sheet);
}

TEST(Classifier, OnSurfaceSpecialPoints) {
  const Paraboloid p4(1, 4);
  EXPECT_EQ(classify_on_surface(p4, 0, 0).count, 1);
  const auto pts = special_points(p4);
  for (const char* l : {"E1", "E2", "E3", "E4", "G1", "G2"}) {
    const auto np = find_point(pts, l);
    ASSERT_TRUE(np && np->position) << l;
    const PointClassification c = classify_on_surface(p4, np->position->x, np->position->y);
    EXPECT_EQ(c.count, 3) << l;
    EXPECT_EQ(c.geometric_count, 3) << l;
    EXPECT_FALSE(c.boundary) << l;
  }

  const Paraboloid p3(1, 3);
  const PointClassification e = classify_on_surface(p3, 0, 2 * std::sqrt(2.0) / 3);
  EXPECT_EQ(e.count, 2);
  EXPECT_EQ(e.geometric_count, 2);
  EXPECT_NE(e.label.find("E1"), std::string::npos);
}

// Points on the intersection curves: 2 where they bound the 1 | 3
// regions, 4 where they bound 3 | 5. Without crossings each piece keeps
// one count, and the lower piece on the surface carries 2.
TEST(Classifier, OnCurveCounts) {
  for (double b : {2.5, 4.0}) {
    const Paraboloid p(1, b);
    const SurfaceClassifier sc(p, 6.0);
    struct PieceStats {
      std::set<int> counts;
      double z_min = 1e300;
    };
    std::vector<PieceStats> pieces;
    for (CurveId id : {CurveId::c8, CurveId::c9})
      for (const CurveInterval& iv : curve_domain(p, id, {6.0})) {
        PieceStats ps;
        for (int k = 1; k < 12; ++k) {
          const double t = iv.lo + (iv.hi - iv.lo) * k / 12.0;
          const SpacePoint q = curve_point(p, id, t);
          const PointClassification c = sc.classify(q.x, q.y);
          if (!c.label.empty()) continue;
          EXPECT_TRUE(c.count == 2 || c.count == 4) << b << " t=" << t;
          EXPECT_EQ(c.count, c.geometric_count) << b << " t=" << t;
          ps.counts.insert(c.count);
          ps.z_min = std::min(ps.z_min, q.z);
        }
        pieces.push_back(ps);
      }
    if (b < 3.0) {
      std::sort(pieces.begin(), pieces.end(), [](const PieceStats& l, const PieceStats& r) { return l.z_min < r.z_min; });
      for (std::size_t k = 0; k < pieces.size(); ++k)
        EXPECT_EQ(pieces[k].counts, std::set<int>{k < pieces.size() / 2 ? 2 : 4}) << k;
    }
  }
}

TEST(Classifier, GeometricMatchesAlgebraic) {
  const Paraboloid p(1, 4);
  const SurfaceClassifier sc(p, 5.0);
  std::mt19937_64 rng(7);
  int agree = 0, total = 0;
  for (int k = 0; k < 2000; ++k) {
    const double x = 6.0 * detail::unit_uniform(rng) - 3.0, y = 6.0 * detail::unit_uniform(rng) - 3.0;
    const PointClassification c = sc.classify(x, y);
    if (c.boundary && c.count != c.geometric_count) continue;
    ++total;
    agree += c.count == c.geometric_count;
  }
  EXPECT_EQ(agree, total);
  EXPECT_GE(total, 1998);  // at most 0.1% left to the band
}

TEST(Classifier, LemmaTable) {
  EXPECT_EQ(lemma_expected_count(16, "below"), 2);
  EXPECT_EQ(lemma_expected_count(18, "below"), 4);
  EXPECT_EQ(lemma_expected_count(19, "below"), 1);
  EXPECT_EQ(lemma_expected_count(17, "at"), 2);
  EXPECT_THROW(lemma_expected_count(15, "at"), InvalidArgument);
  EXPECT_THROW(lemma_expected_count(16, "beside"), InvalidArgument);

  const Paraboloid p(1, 4);
  for (int id : {16, 17, 18, 19})
    for (const char* pos : {"above", "at", "below"})
      for (const SpacePoint& A : lemma_samples(p, id, pos, 10))
        EXPECT_EQ(concurrent_normals(p, A).count(), lemma_expected_count(id, pos)) << id << ' ' << pos;
}

TEST(Classifier, Census) {
  struct Case {
    double b;
    std::size_t regions;
    std::set<int> counts;
  };
  for (const Case& c : {Case{1.5, 2, {1, 3}}, Case{2.5, 4, {1, 3, 5}}, Case{3.0, 5, {1, 3, 5}}, Case{4.0, 7, {1, 3, 5}}}) {
    const Paraboloid p(1, c.b);
    const CensusReport r = region_census(p, 20000, 42);
    EXPECT_EQ(r.regions.size(), c.regions) << c.b;
    EXPECT_EQ(r.disagreements, 0) << c.b;
    std::set<int> seen;
    for (const CensusRegion& reg : r.regions) seen.insert(reg.count);
    EXPECT_EQ(seen, c.counts) << c.b;
    EXPECT_EQ(r.regions_by_count.at(1), 1) << c.b;
  }
}

TEST(Classifier, CensusIsDeterministic) {
  const Paraboloid p(1, 4);
  const CensusReport a = region_census(p, 3000, 5), b = region_census(p, 3000, 5);
  ASSERT_EQ(a.regions.size(), b.regions.size());
  for (std::size_t k = 0; k < a.regions.size(); ++k) {
    EXPECT_EQ(a.regions[k].cells, b.regions[k].cells);
    EXPECT_EQ(a.regions[k].x, b.regions[k].x);
  }
  EXPECT_THROW(region_census(p, 0, 1), InvalidArgument);
}
