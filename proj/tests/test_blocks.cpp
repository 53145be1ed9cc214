#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lipfrac/blocks.hpp"
#include "lipfrac/errors.hpp"

using namespace lipfrac;
using namespace lipfrac::fixtures;

namespace {

std::vector<IntVec> polys(const BlockDecomposition &d) {
  std::vector<IntVec> out;
  for (auto &b : d.blocks) out.push_back(b.poly);
  return out;
}

// Brute-force oracle: words of length <= k+1 whose ratio first drops to r^k or below.
long brute_cylinders(const IFS &s, long k) {
  long count = 0;
  std::function<void(long)> rec = [&](long lam) {
    if (lam >= k) {
      ++count;
      return;
    }
    for (long l : s.lambdas) rec(lam + l);
  };
  rec(0);
  return count;
}

} // namespace

TEST(Cylinders, CountsMatchOracle) {
  IFS s = npi_ifs();
  EXPECT_EQ(enumerate_cylinders(s, 0).size(), 1u);
  EXPECT_EQ(enumerate_cylinders(s, 1).size(), 7u);
  EXPECT_EQ(enumerate_cylinders(s, 2).size(), 43u);
  for (long k = 0; k <= 4; ++k) EXPECT_EQ(enumerate_cylinders(s, k).size(), size_t(brute_cylinders(s, k)));
  auto c = enumerate_cylinders(ifs_135(), 2);
  EXPECT_EQ(c.size(), 9u);
  for (auto &x : c) EXPECT_EQ(x.map.lambda, 2);
}

TEST(Cylinders, ExplosionGuard) {
  try {
    enumerate_cylinders(npi_ifs(), 4, 100);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::ExplosionGuard);
  }
}

TEST(Blocks, Level1Npi) {
  IFS s = npi_ifs();
  auto g = attractor_extent(s);
  auto d = block_decomposition(g, 1);
  EXPECT_EQ(polys(d), (std::vector<IntVec>{{1, 0}, {1, 1}, {2, 0}, {2, 0}}));
  EXPECT_EQ(block_measure_total(d, s.spec), FieldElem::from_rat(s.spec, 1));
  auto sum = classify_interior(d, g, *s.region);
  EXPECT_EQ(sum.boundary, 2);
  EXPECT_FALSE(d.blocks[0].interior);
  EXPECT_TRUE(d.blocks[1].interior);
  EXPECT_TRUE(d.blocks[2].interior);
  EXPECT_FALSE(d.blocks[3].interior);
}

TEST(Blocks, Level1Of135) {
  IFS s = ifs_135();
  auto g = attractor_extent(s);
  auto d = block_decomposition(g, 1);
  EXPECT_EQ(polys(d), (std::vector<IntVec>{{1}, {1}, {1}}));
  auto sum = classify_interior(d, g, *s.region);
  EXPECT_EQ(sum.boundary, 2);
  EXPECT_TRUE(d.blocks[1].interior);
}

TEST(Blocks, NeighbourhoodConnectivity) {
  EXPECT_TRUE(neighbourhood_connectivity(attractor_extent(npi_ifs())));
  EXPECT_TRUE(neighbourhood_connectivity(attractor_extent(ifs_135())));
}

TEST(Blocks, CountsTableNpi) {
  IFS s = npi_ifs();
  auto g = attractor_extent(s);
  auto t = block_counts(g, *s.region, 3);
  ASSERT_EQ(t.levels.size(), 3u);
  EXPECT_EQ(t.levels[0].xi, (IntVec{6, 1}));
  EXPECT_EQ(t.levels[1].xi, (IntVec{37, 6}));
  for (auto &l : t.levels) {
    EXPECT_TRUE(l.recursion_ok);
    EXPECT_TRUE(l.normalization_ok);
  }
  EXPECT_GE(t.varpi, 1.0);
  EXPECT_LT(t.varpi, 100.0);
}

TEST(Blocks, CountsTable135) {
  IFS s = ifs_135();
  auto g = attractor_extent(s);
  auto t = block_counts(g, *s.region, 4);
  Rat three_k = 1;
  for (auto &l : t.levels) {
    three_k *= 3;
    EXPECT_EQ(l.xi, (IntVec{Int(three_k.get_num())}));
    EXPECT_EQ(l.boundary, 2);
    // p^k zeta(k) = 2 / 3^k
    EXPECT_TRUE(l.pk_zeta.contains(Rat(2) / three_k));
  }
}

TEST(Blocks, RegionCheck) {
  IFS s = npi_ifs();
  auto g = attractor_extent(s);
  EXPECT_NO_THROW(check_region(g, *s.region));
  OpenRegion small{{Box{{Rat(0)}, {Rat(1, 2)}}}};
  EXPECT_THROW(check_region(g, small), Error);
}

TEST(Types, NpiClosesWithReflectedPairTypes) {
  IFS s = npi_ifs();
  auto g = attractor_extent(s);
  auto tg = discover_types(g, s.region, 4);
  EXPECT_TRUE(tg.closed);
  EXPECT_LE(tg.depth_explored, 3);
  EXPECT_TRUE(tg.v_o_exact);
  // Interior types carry polynomials 1+t and 2, never the root type.
  std::set<IntVec> vo_polys;
  for (size_t t : tg.v_o) vo_polys.insert(tg.types[t].poly);
  EXPECT_TRUE(vo_polys.count({1, 1}));
  EXPECT_TRUE(vo_polys.count({2, 0}));
  for (size_t t : tg.v_o) EXPECT_NE(t, 0u);
}

TEST(Types, ClosedGraphRefinesIntoItself) {
  IFS s = ifs_135();
  auto tg = discover_types(attractor_extent(s), s.region, 3);
  EXPECT_TRUE(tg.closed);
  EXPECT_EQ(tg.types.size(), 1u);
  EXPECT_EQ(tg.v_o, (std::vector<size_t>{0}));
}

// Property: every level-(k+1) cylinder lies inside exactly one level-k block.
TEST(BlocksProperty, RefinementConsistency) {
  IFS s = npi_ifs();
  auto g = attractor_extent(s);
  auto d1 = block_decomposition(g, 1);
  auto d2 = block_decomposition(g, 2);
  for (auto &c : d2.cylinders) {
    int hits = 0;
    for (auto &b : d1.blocks) {
      for (size_t m : b.members) {
        auto &w = d1.cylinders[m].word;
        if (c.word.size() >= w.size() && std::equal(w.begin(), w.end(), c.word.begin())) ++hits;
      }
    }
    EXPECT_EQ(hits, 1);
  }
}
