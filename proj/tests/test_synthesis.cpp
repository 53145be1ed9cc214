#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "lipfrac/errors.hpp"
#include "lipfrac/synthesis.hpp"

using namespace lipfrac;
using namespace lipfrac::fixtures;

namespace {

SpecPtr npi_spec() { return npi_ifs().spec; }
FieldElem pe(const SpecPtr &s, long k) { return FieldElem::p(s).pow(k); }
FieldElem num(const SpecPtr &s, long q) { return FieldElem::from_rat(s, q); }

} // namespace

TEST(Synthesis, ConstructMemberHalfThird) {
  auto s = spec_from_relation({2});
  IFS m = construct_member(s, Rat(1, 3));
  EXPECT_EQ(m.dim, 1);
  EXPECT_EQ(m.maps.size(), 2u);
  EXPECT_EQ(m.r, Rat(1, 3));
  EXPECT_TRUE(same_spec(m.spec, s));
}

TEST(Synthesis, ConstructMemberNpiFamily) {
  IFS m = construct_member(npi_spec(), Rat(1, 10));
  EXPECT_TRUE(same_spec(m.spec, npi_spec()));
  EXPECT_EQ(m.r, Rat(1, 10));
  // The built member lies in the family, so it is classified there.
  EXPECT_NO_THROW(same_family_equivalent(m, npi_ifs()));
}

TEST(Synthesis, ConstructMemberCornerRoute) {
  // Asking for two dimensions forces the corner construction in (0,1)^d.
  auto s = measure_root({1, 1});
  IFS m = construct_member(s, Rat(1, 3), 2);
  EXPECT_GE(m.maps.size(), 3u);
  EXPECT_GE(size_t(1) << m.dim, m.maps.size());
  EXPECT_TRUE(same_spec(m.spec, s));
  EXPECT_THROW(construct_member(spec_from_relation({0, 2}, false), Rat(1, 3)), Error);
}

TEST(Synthesis, NonPrincipalIdealRoundTrip) {
  auto s = npi_spec();
  auto c = construct_ifs_with_ideal(s, Rat(1, 10), {num(s, 2), pe(s, 1) + num(s, 3)});
  ASSERT_EQ(c.a.size(), 2u);
  EXPECT_EQ(c.a[0], pe(s, 1) + num(s, 1));
  EXPECT_EQ(c.a[1], num(s, 2));
  EXPECT_EQ(c.b[0], pe(s, 1));
  EXPECT_EQ(c.b[1], pe(s, 1) * Rat(2));
  EXPECT_EQ(c.ell, 1);
  EXPECT_EQ(c.dim, 2);
  EXPECT_EQ(c.ifs.maps.size(), 7u);
  // 1 - p^ell = sum a_i b_i.
  FieldElem sum = c.a[0] * c.b[0] + c.a[1] * c.b[1];
  EXPECT_EQ(sum, num(s, 1) - pe(s, c.ell));
  auto I = ideal_hnf({num(s, 2), pe(s, 1) + num(s, 1)}, s);
  EXPECT_EQ(ideal_from_graph(c.graph, *c.graph.v_o), I);
  EXPECT_FALSE(is_whole_ring(I));
}

TEST(Synthesis, WholeRingRoundTrip) {
  auto s = spec_from_relation({2});
  auto c = construct_ifs_with_ideal(s, Rat(1, 3), {num(s, 1)});
  EXPECT_EQ(c.ell, 2);
  EXPECT_TRUE(is_whole_ring(ideal_from_graph(c.graph, *c.graph.v_o)));
  auto npi = npi_spec();
  auto w = construct_ifs_with_ideal(npi, Rat(1, 10), whole_ring(npi));
  EXPECT_TRUE(is_whole_ring(ideal_from_graph(w.graph, *w.graph.v_o)));
}

TEST(Synthesis, ConstructedMapsStayInCube) {
  auto s = npi_spec();
  auto c = construct_ifs_with_ideal(s, Rat(1, 10), {num(s, 2), pe(s, 1) + num(s, 3)});
  EXPECT_NO_THROW(check_region(attractor_extent(c.ifs), *c.ifs.region));
}

TEST(Synthesis, SuitablePlanSplitsBlock) {
  auto g = attractor_extent(npi_ifs());
  auto d = block_decomposition(g, 1);
  // The level-1 block with polynomial 2 has measure 2p; split it into p(1+p) + p(1-p).
  // Both targets lie in the ideal (2, 1+p); a split into p + p is impossible.
  size_t target = SIZE_MAX;
  for (size_t b = 0; b < d.blocks.size(); ++b)
    if (d.blocks[b].poly == IntVec{2} || d.blocks[b].poly == IntVec{2, 0}) target = b;
  ASSERT_NE(target, SIZE_MAX);
  auto s = npi_spec();
  std::vector<FieldElem> targets = {num(s, 1) + pe(s, 1), num(s, 1) - pe(s, 1)};
  auto plan = suitable_decomposition(g, 1, {target}, targets);
  ASSERT_EQ(plan.parts.size(), 2u);
  // Each part's measure is p^(l+K) times its summed polynomial.
  for (size_t i = 0; i < 2; ++i)
    EXPECT_EQ(poly_at_p(plan.part_polys[i], s) * pe(s, plan.level + plan.order), targets[i] * pe(s, 1));
  EXPECT_THROW(suitable_decomposition(g, 1, {target}, {num(s, 1), num(s, 1)}, std::nullopt, 2), Error);
  std::vector<size_t> all;
  for (auto &part : plan.parts) all.insert(all.end(), part.begin(), part.end());
  std::sort(all.begin(), all.end());
  EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());
}

TEST(Synthesis, SuitablePlanOracleAgreesOnOrder) {
  // Brute force over subsets of the level-(1+K) blocks under the family for the
  // smallest K with a part of measure p(1+p).
  auto g = attractor_extent(npi_ifs());
  auto s = npi_spec();
  auto d1 = block_decomposition(g, 1);
  size_t target = 0;
  for (size_t b = 0; b < d1.blocks.size(); ++b)
    if (poly_at_p(d1.blocks[b].poly, s) == num(s, 2)) target = b;
  long oracle_K = -1;
  for (long K = 0; K <= 1 && oracle_K < 0; ++K) {
    auto d = block_decomposition(g, 1 + K);
    std::vector<FieldElem> vals;
    for (auto &blk : d.blocks) {
      bool under = false;
      for (size_t m : d1.blocks[target].members) {
        const auto &w = d1.cylinders[m].word;
        const auto &x = d.cylinders[blk.members[0]].word;
        under = under || (x.size() >= w.size() && std::equal(w.begin(), w.end(), x.begin()));
      }
      if (under) vals.push_back(poly_at_p(blk.poly, s) * pe(s, K));
    }
    ASSERT_LE(vals.size(), 20u);
    for (size_t mask = 0; mask < (size_t(1) << vals.size()); ++mask) {
      FieldElem sum = num(s, 0);
      for (size_t i = 0; i < vals.size(); ++i)
        if (mask >> i & 1) sum = sum + vals[i];
      if (sum == num(s, 1) + pe(s, 1)) {
        oracle_K = K;
        break;
      }
    }
  }
  ASSERT_GE(oracle_K, 0);
  auto plan = suitable_decomposition(g, 1, {target}, {num(s, 1) + pe(s, 1), num(s, 1) - pe(s, 1)});
  EXPECT_EQ(plan.order, oracle_K);
}

TEST(Synthesis, SuitablePlanRejectsBadTargets) {
  auto g = attractor_extent(npi_ifs());
  auto s = npi_spec();
  EXPECT_THROW(suitable_decomposition(g, 1, {0}, {num(s, 5)}), Error);
  auto I = ideal_hnf({num(s, 2), pe(s, 1) + num(s, 1)}, s);
  try {
    suitable_decomposition(g, 1, {0}, {num(s, 1)}, I);
    FAIL() << "expected AlphabetNotInIdeal";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::AlphabetNotInIdeal);
  }
}

TEST(Synthesis, WitnessIdenticalSets) {
  auto w = cylinder_witness(ifs_135(), ifs_135(), 3);
  EXPECT_TRUE(w.measures_exact);
  EXPECT_NEAR(w.max_distortion, 1.0, 1e-12);
  EXPECT_LE(w.max_distortion, w.bound);
}

TEST(Synthesis, WitnessDigitSets) {
  auto w = cylinder_witness(ifs_135(), ifs_145(), 5);
  EXPECT_TRUE(w.measures_exact);
  EXPECT_GE(w.sampled_pairs, 1000);
  EXPECT_LE(w.max_distortion, w.bound);
}

TEST(Synthesis, WitnessNeedsEqualIdeals) {
  try {
    cylinder_witness(npi_ifs(), npi_ssc_ifs(), 2);
    FAIL() << "expected RouteUnsupported";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::RouteUnsupported);
  }
}
