#include <gtest/gtest.h>

#include "support.hpp"
#include "uhull/errors.hpp"

using namespace uhull;
using uhull::testing::Gen;

namespace {

UncertainPointSet triangle() {
  return UncertainPointSet::unipoint({{0, 10}, {-10, -5}, {10, -5}}, {Rational(1, 2), Rational(1, 2), Rational(1, 2)});
}

UncertainPointSet tetrahedron() {
  std::vector<Point> pts{{1, 2, 9}, {-9, -4, -3}, {8, -5, -2}, {-1, 8, -4}};
  return UncertainPointSet::unipoint(pts, std::vector<Rational>(4, Rational(1, 2)));
}

std::vector<SiteId> ids(const UncertainPointSet& m) {
  std::vector<SiteId> out;
  for (std::size_t g = 0; g < m.group_count(); ++g)
    for (std::size_t i = 0; i < m.groups[g].size(); ++i) out.push_back({g, i});
  return out;
}

}  // namespace

TEST(Witness, TriangleTopSite) {
  EXPECT_EQ(witness_edge_probability({0, 0}, {0, 0}, triangle()), Rational(1, 4));
}

TEST(Witness, CertainSiteWithEmptyRightSide) {
  auto m = UncertainPointSet::unipoint({{5, 1}, {3, 4}}, {Rational(1), Rational(1, 3)});
  // nothing lies right of q -> (3,4) except (5,1); nothing right of q -> (5,1)
  EXPECT_EQ(witness_edge_probability({0, 0}, {0, 0}, m), Rational(1));
}

TEST(Witness, SweepMatchesDirectEvaluation) {
  Gen g(11);
  for (int it = 0; it < 60; ++it) {
    auto m = it % 2 ? uhull::testing::random_unipoint(g, 1 + it % 9) : uhull::testing::random_multipoint(g, 1 + it % 4, 1 + it % 3);
    Point q = uhull::testing::random_query(g, m);
    auto terms = witness_terms(q, m);
    Rational total = empty_outcome_probability(m);
    for (const auto& t : terms) {
      EXPECT_EQ(t.probability, witness_edge_probability(q, t.site, m));
      total += t.probability;
    }
    EXPECT_EQ(total, 1 - membership_2d(q, m));
  }
}

TEST(Witness, MultipointMatchesEnumeration) {
  Gen g(12);
  for (int it = 0; it < 20; ++it) {
    auto m = uhull::testing::random_multipoint(g, 3, 2);
    Point q = uhull::testing::random_query(g, m);
    for (SiteId s : ids(m)) {
      const Point& at = m.groups[s.group][s.index].location;
      Rational counted = 0;
      enumerate_outcomes(m, [&](const Outcome& o) {
        if (o.chosen[s.group] != s.index) return;
        for (const Point& x : o.sites(m))
          if (!(x == at) && orient2d(q, at, x) < 0) return;
        counted += o.probability;
      });
      EXPECT_EQ(witness_edge_probability(q, s, m), counted);
    }
  }
}

TEST(Membership2d, Triangle) { EXPECT_EQ(membership_2d({0, 0}, triangle()), Rational(1, 8)); }

TEST(Membership2d, OutsideEverything) { EXPECT_EQ(membership_2d({1000, 1000}, triangle()), Rational(0)); }

TEST(Membership2d, ConvexQuadrilateral) {
  auto m = UncertainPointSet::unipoint({{-7, -3}, {9, -4}, {11, 6}, {-5, 8}}, std::vector<Rational>(4, Rational(1, 2)));
  EXPECT_EQ(membership_2d({1, 2}, m), brute_force_membership({1, 2}, m));
}

TEST(Membership2d, RandomAgainstOracle) {
  Gen g(13);
  for (int it = 0; it < 150; ++it) {
    auto m = it % 3 ? uhull::testing::random_unipoint(g, 1 + it % 10) : uhull::testing::random_multipoint(g, 1 + it % 4, 1 + it % 3);
    Point q = uhull::testing::random_query(g, m, 60);
    EXPECT_EQ(membership_2d(q, m), brute_force_membership(q, m)) << it;
    EXPECT_NEAR(membership_2d_fast(q, m), brute_force_membership(q, m).get_d(), 1e-9);
  }
}

TEST(Membership2d, LargeCoordinatesUseRationalFallback) {
  Rational big("123456789012345678901234567890");
  auto m = UncertainPointSet::unipoint({{0, big}, {-big, Rational(-1, 3)}, {big, Rational(-2, 7)}},
                                       std::vector<Rational>(3, Rational(1, 2)));
  EXPECT_EQ(membership_2d({0, 0}, m), Rational(1, 8));
}

TEST(Membership2d, DegenerateQueries) {
  auto m = triangle();
  EXPECT_THROW(membership_2d({0, 10}, m), Error);
  EXPECT_THROW(membership_2d({0, 0}, UncertainPointSet::unipoint({{1, 1}, {-2, -2}, {3, -1}}, std::vector<Rational>(3, Rational(1, 2)))), Error);
  EXPECT_THROW(membership_2d({0, 0}, UncertainPointSet::unipoint({{1, 1}, {2, 2}, {3, -1}}, std::vector<Rational>(3, Rational(1, 2)))), Error);
  try {
    membership_2d({0, -5}, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Degenerate);
  }
}

TEST(Conditioned, NoExclusionCertainAnchor) {
  auto m = UncertainPointSet::unipoint({{0, 10}, {-10, -5}, {10, -5}}, {Rational(1), Rational(1, 2), Rational(1, 3)});
  EXPECT_EQ(membership_2d_conditioned({0, 0}, m, {0, 0}, {}), membership_2d({0, 0}, m));
}

TEST(Conditioned, EverythingElseExcluded) {
  auto m = triangle();
  std::vector<SiteId> ex{{1, 0}, {2, 0}};
  EXPECT_EQ(membership_2d_conditioned({0, 0}, m, {0, 0}, ex), Rational(0));
}

TEST(Conditioned, FilteredEnumeration) {
  Gen g(14);
  for (int it = 0; it < 30; ++it) {
    auto m = it % 2 ? uhull::testing::random_unipoint(g, 6) : uhull::testing::random_multipoint(g, 3, 2);
    Point q = uhull::testing::random_query(g, m, 60);
    auto all = ids(m);
    SiteId anchor = all[g.integer(0, all.size() - 1)];
    std::vector<SiteId> excluded;
    for (SiteId s : all)
      if (!(s == anchor) && s.group != anchor.group && g.integer(0, 2) == 0) excluded.push_back(s);
    Rational hit = 0, event = 0;
    enumerate_outcomes(m, [&](const Outcome& o) {
      if (o.chosen[anchor.group] != anchor.index) return;
      for (SiteId e : excluded)
        if (o.chosen[e.group] == e.index) return;
      event += o.probability;
      auto pts = o.sites(m);
      if (point_in_hull(q, pts) != Location::Outside) hit += o.probability;
    });
    if (sgn(event) == 0) continue;
    EXPECT_EQ(membership_2d_conditioned(q, m, anchor, excluded), hit / event);
  }
}

TEST(Escaping, PlanarReducesToSides) {
  // d = 2: the ray leaves q' away from the anchor; the facet q-p meets it iff p' is beyond q'
  Point q{0, 0};
  std::vector<Point> beyond{{3, 5}}, behind{{-3, 5}};
  EXPECT_TRUE(escaping_facet_test(q, beyond, {-1, -4}));
  EXPECT_FALSE(escaping_facet_test(q, behind, {-1, -4}));
}

TEST(Escaping, UniqueForNonSilhouetteVertex) {
  auto m = tetrahedron();
  Point q{0, 0, 20};  // above the top vertex: a vertex of the hull, its shadow inside
  std::vector<Point> sites = uhull::testing::all_sites(m);
  for (std::size_t anchor = 0; anchor < sites.size(); ++anchor) {
    int count = 0;
    for (std::size_t a = 0; a < sites.size(); ++a)
      for (std::size_t b = a + 1; b < sites.size(); ++b) {
        if (a == anchor || b == anchor) continue;
        // facet of CH(sites + q) through q, a, b?
        std::vector<Point> s{q, sites[a], sites[b]};
        int sign = 0;
        bool facet = true;
        for (std::size_t x = 0; x < sites.size(); ++x) {
          if (x == a || x == b) continue;
          s.push_back(sites[x]);
          int o = orient_d(s);
          s.pop_back();
          if (sign == 0) sign = o;
          else if (o != sign) facet = false;
        }
        std::vector<Point> f{sites[a], sites[b]};
        if (facet && escaping_facet_test(q, f, sites[anchor])) ++count;
      }
    EXPECT_EQ(count, 1) << anchor;
  }
}

TEST(FacetProbability, ZeroConditions) {
  auto m = tetrahedron();
  // facet containing a site below the anchor
  std::vector<SiteId> f{{0, 0}, {3, 0}};
  EXPECT_EQ(facet_probability({0, 0, 0}, f, {1, 0}, m), Rational(0));
  auto mp = UncertainPointSet::multipoint({{{{1, 2, 9}, Rational(1, 4)}, {{-1, 8, -4}, Rational(1, 4)}},
                                           {{{-9, -4, -3}, Rational(1, 2)}},
                                           {{{8, -5, -2}, Rational(1, 2)}}});
  std::vector<SiteId> same{{0, 0}, {0, 1}};
  EXPECT_EQ(facet_probability({0, 0, 0}, same, {1, 0}, mp), Rational(0));
}

TEST(FacetProbability, MatchesEnumeration) {
  Gen g(15);
  for (int it = 0; it < 8; ++it) {
    auto m = it % 2 ? uhull::testing::random_unipoint(g, 5, 3) : uhull::testing::random_multipoint(g, 3, 2, 3);
    Point q = uhull::testing::random_query(g, m);
    auto all = ids(m);
    for (SiteId anchor : all)
      for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) {
          if (all[a] == anchor || all[b] == anchor) continue;
          std::vector<SiteId> f{all[a], all[b]};
          const Point& pa = m.groups[all[a].group][all[a].index].location;
          const Point& pb = m.groups[all[b].group][all[b].index].location;
          const Point& pan = m.groups[anchor.group][anchor.index].location;
          Rational expect = 0;
          enumerate_outcomes(m, [&](const Outcome& o) {
            if (o.chosen[anchor.group] != anchor.index) return;
            if (o.chosen[all[a].group] != all[a].index || o.chosen[all[b].group] != all[b].index) return;
            if (!(pan[2] < q[2])) return;
            auto pts = o.sites(m);
            int side = 0;
            for (const Point& x : pts) {
              if (x[2] < pan[2]) return;
              if (x == pa || x == pb) continue;
              int o3 = orient_d(std::vector<Point>{q, pa, pb, x});
              if (side == 0) side = o3;
              else if (o3 != side) return;
            }
            expect += o.probability;
          });
          EXPECT_EQ(facet_probability(q, f, anchor, m), expect);
        }
  }
}

TEST(MembershipDd, Tetrahedron) {
  auto m = tetrahedron();
  ASSERT_EQ(point_in_hull({0, 0, 0}, uhull::testing::all_sites(m)), Location::Inside);
  EXPECT_EQ(membership_dd({0, 0, 0}, m), Rational(1, 16));
  EXPECT_EQ(membership_dd_radial({0, 0, 0}, m), Rational(1, 16));
}

TEST(MembershipDd, QueryBelowEverything) {
  EXPECT_EQ(membership_dd({0, 0, -100}, tetrahedron()), Rational(0));
}

TEST(MembershipDd, RandomAgainstOracle) {
  Gen g(16);
  for (int it = 0; it < 40; ++it) {
    std::size_t d = it % 5 == 4 ? 4 : 3;
    auto m = it % 2 ? uhull::testing::random_unipoint(g, 3 + it % 6, d, 30)
                    : uhull::testing::random_multipoint(g, 2 + it % 3, 2, d, 30);
    Point q = uhull::testing::random_query(g, m, 20);
    Rational oracle = brute_force_membership(q, m);
    EXPECT_EQ(membership_dd(q, m), oracle) << it;
    EXPECT_EQ(membership_dd_radial(q, m), oracle) << it;
    auto parts = lowest_point_decomposition(q, m);
    Rational vertex = parts.query_lowest;
    for (const auto& t : parts.anchor_terms) vertex += t;
    EXPECT_EQ(vertex, 1 - oracle);
  }
}

TEST(MembershipDd, CertainSiteInsideOppositeWindow) {
  auto m = UncertainPointSet::unipoint({{1, 2, 9}, {-9, -4, -3}, {8, -5, -2}, {-1, 8, -4}, {3, 3, -1}},
                                       {Rational(1, 2), Rational(1), Rational(1, 3), Rational(1), Rational(1, 5)});
  Point q{0, 1, 1};
  EXPECT_EQ(membership_dd(q, m), brute_force_membership(q, m));
  EXPECT_EQ(membership_dd_radial(q, m), membership_dd(q, m));
}

TEST(MembershipDd, SharedHeightIsDegenerate) {
  auto m = UncertainPointSet::unipoint({{1, 2, 9}, {-9, -4, -3}, {8, -5, -3}, {-1, 8, -4}}, std::vector<Rational>(4, Rational(1, 2)));
  try {
    membership_dd({0, 0, 0}, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateProjection);
  }
}
