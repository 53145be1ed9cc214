#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lipfrac/errors.hpp"
#include "lipfrac/graph.hpp"

using namespace lipfrac;
using namespace lipfrac::fixtures;

namespace {

FieldElem one_plus_p(const SpecPtr &s) { return FieldElem::from_rat(s, 1) + FieldElem::p(s); }

} // namespace

TEST(Graph, MeasureVectorOfReflectedPairs) {
  GDGraph gd = gdid_graph();
  auto v = measure_vector(gd);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[0], FieldElem::from_rat(gd.spec, 1));
  EXPECT_EQ(v[1], one_plus_p(gd.spec));
  EXPECT_EQ(v[2], FieldElem::from_rat(gd.spec, 2));
}

TEST(Graph, IdealFromInteriorVertices) {
  GDGraph gd = gdid_graph();
  auto I = ideal_from_graph(gd, *gd.v_o);
  EXPECT_EQ(I, ideal_hnf({one_plus_p(gd.spec), FieldElem::from_rat(gd.spec, 2)}, gd.spec));
  EXPECT_EQ(I.index(), 2);
}

TEST(Graph, SelfLoopGivesWholeRing) {
  IFS s = ifs_135();
  GDGraph gd;
  gd.r = s.r;
  gd.spec = s.spec;
  gd.names = {"E"};
  for (auto &m : s.maps) gd.edges.push_back({0, 0, 1, m.orth, m.trans});
  auto v = measure_vector(gd);
  EXPECT_EQ(v, std::vector<FieldElem>{FieldElem::from_rat(s.spec, 1)});
  EXPECT_TRUE(is_whole_ring(ideal_from_graph(gd, {0})));
}

TEST(Graph, SingularSystemIsReported) {
  // E1 -> E1 with total weight 1 never reaches the root.
  GDGraph gd = gdid_graph();
  gd.edges.clear();
  gd.edges.push_back({0, 0, 1, {{Rat(1)}}, {Rat(0)}});
  for (int i = 0; i < 6; ++i) gd.edges.push_back({0, 0, 1, {{Rat(1)}}, {Rat(0)}});
  gd.edges.pop_back();
  gd.edges.push_back({0, 0, 2, {{Rat(1)}}, {Rat(0)}});
  for (int i = 0; i < 6; ++i) gd.edges.push_back({1, 1, 1, {{Rat(1)}}, {Rat(0)}});
  gd.edges.push_back({1, 1, 2, {{Rat(1)}}, {Rat(0)}});
  gd.edges.push_back({2, 0, 1, {{Rat(1)}}, {Rat(0)}});
  try {
    measure_vector(gd);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
  }
}

TEST(IfsIdeal, NpiIsExactAndNotPrincipalRing) {
  IFS s = npi_ifs();
  auto res = ideal_of_ifs(s, 2);
  EXPECT_EQ(res.route, "blocks");
  EXPECT_EQ(res.status, IdealStatus::Exact);
  EXPECT_EQ(res.ideal, ideal_from_graph(gdid_graph(), {1, 2}));
  EXPECT_TRUE(res.graph_route_checked);
}

TEST(IfsIdeal, BlocksAndFastPathAgreeOn135) {
  IFS s = ifs_135();
  auto g = attractor_extent(s);
  auto fast = cosc_orthogonal_fast_path(g, *s.region);
  ASSERT_TRUE(fast);
  auto res = ideal_from_blocks(g, *s.region, 2);
  EXPECT_EQ(res.status, IdealStatus::Exact);
  EXPECT_EQ(res.ideal, *fast);
  EXPECT_TRUE(is_whole_ring(res.ideal));
}

TEST(IfsIdeal, MixedOrientationsSkipFastPath) {
  IFS s = npi_ifs();
  EXPECT_FALSE(cosc_orthogonal_fast_path(attractor_extent(s), *s.region));
}

TEST(IfsIdeal, AbstractSystemIsWholeRing) {
  auto res = ideal_of_ifs(abstract_ifs(Rat(1, 10), {2, 1, 1, 1, 1, 1, 1}));
  EXPECT_TRUE(is_whole_ring(res.ideal));
  EXPECT_EQ(res.status, IdealStatus::Exact);
}

// Property: the lower-bound ideal only grows with the level and sits inside the exact one.
TEST(IfsIdealProperty, LowerBoundIsMonotone) {
  IFS s = npi_ifs();
  auto g = attractor_extent(s);
  auto exact = ideal_from_blocks(g, *s.region, 1).ideal;
  IdealLattice prev;
  for (long k = 1; k <= 3; ++k) {
    auto lb = ideal_from_blocks(g, *s.region, k, 0);
    EXPECT_EQ(lb.status, IdealStatus::LowerBound);
    for (auto &x : ideal_generators(lb.ideal)) EXPECT_TRUE(ideal_contains(exact, x));
    if (k > 1)
      for (auto &x : ideal_generators(prev)) EXPECT_TRUE(ideal_contains(lb.ideal, x));
    prev = lb.ideal;
  }
}
