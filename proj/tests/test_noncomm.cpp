#include <gtest/gtest.h>

#include "lipfrac/errors.hpp"
#include "lipfrac/noncomm.hpp"

using namespace lipfrac;

namespace {

std::vector<Rat> member(long n) {
  std::vector<Rat> r(static_cast<size_t>(ipow(3, n - 1).get_ui()), Rat(1, ipow(9, n)));
  r.push_back(Rat(4, 9));
  return r;
}

} // namespace

TEST(Noncomm, ConeSolutionExact) {
  RatMat A = {{Rat(1), Rat(2)}, {Rat(1), Rat(-1)}};
  auto x = nonneg_solution(A, {Rat(3), Rat(0)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 1);
  EXPECT_EQ((*x)[1], 1);
  EXPECT_FALSE(nonneg_solution({{Rat(1), Rat(1)}}, {Rat(-1)}));
}

TEST(Noncomm, SemigroupBasics) {
  auto a = sgp_equivalent({Rat(1, 3)}, {Rat(1, 27)});
  EXPECT_TRUE(a.equivalent);
  EXPECT_EQ(a.u, 3);
  EXPECT_EQ(a.v, 1);
  auto b = sgp_equivalent({Rat(1, 2)}, {Rat(1, 3)});
  EXPECT_FALSE(b.equivalent);
  EXPECT_EQ(b.obstruction, "1/2");
}

TEST(Noncomm, SubIfsExamples) {
  // a = 1/2, b = 1/3: ratios a, a^2, ab, b.
  std::vector<Rat> S = {Rat(1, 2), Rat(1, 4), Rat(1, 6), Rat(1, 3)};
  EXPECT_EQ(sub_ifs(S, RatioSemigroup({Rat(1, 2)})), (std::vector<size_t>{0, 1}));
  EXPECT_EQ(sub_ifs(S, RatioSemigroup({Rat(1, 3)})), (std::vector<size_t>{3}));
  EXPECT_EQ(sub_ifs(S, RatioSemigroup({Rat(1, 6)})), (std::vector<size_t>{0, 1, 2, 3}));
  EXPECT_EQ(sub_ifs(S, std::nullopt).size(), 4u);
}

TEST(Noncomm, ExactDimensions) {
  EXPECT_EQ(exact_dimension({Rat(1, 9), Rat(4, 9)}), std::optional<Rat>(Rat(1, 2)));
  EXPECT_EQ(exact_dimension({Rat(1, 3), Rat(1, 3)}), std::nullopt);
  EXPECT_EQ(exact_dimension({Rat(1, 4), Rat(1, 4)}), std::optional<Rat>(Rat(1, 2)));
  EXPECT_EQ(exact_dimension({Rat(1, 5)}), std::optional<Rat>(Rat(0)));
}

TEST(Noncomm, FamilyReproducesConstruction) {
  auto fam = infinite_family({Rat(1, 9), Rat(4, 9)}, 0, {2, 2, 2}, 5);
  ASSERT_EQ(fam.size(), 5u);
  for (long n = 1; n <= 5; ++n) {
    auto got = fam[n - 1], want = member(n);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << "n = " << n;
  }
  auto id = infinite_family({Rat(1, 9), Rat(4, 9)}, 0, {1}, 3);
  for (auto &m : id) EXPECT_EQ(m, (std::vector<Rat>{Rat(1, 9), Rat(4, 9)}));
  EXPECT_THROW(infinite_family({Rat(1, 9), Rat(4, 9)}, 0, {2, 2}, 3), Error);
}

TEST(Noncomm, FamilySignature) {
  RatioSemigroup G({Rat(1, 9)});
  std::vector<Rat> subdims;
  for (long n = 1; n <= 5; ++n) {
    auto Sn = member(n);
    EXPECT_EQ(exact_dimension(Sn), std::optional<Rat>(Rat(1, 2)));
    auto sd = subdimension(Sn, G);
    ASSERT_TRUE(sd.exact);
    Rat want(n - 1, 2 * n);
    want.canonicalize();
    EXPECT_EQ(*sd.exact, want);
    subdims.push_back(*sd.exact);
    for (long m = 1; m <= 5; ++m) {
      EXPECT_TRUE(sgp_equivalent(Sn, member(m)).equivalent);
      auto z = zplus_equal(Sn, member(m), 10);
      EXPECT_EQ(z.outcome, ZPlusOutcome::EqualUpToBound);
      EXPECT_EQ(z.common, "Z+[1/3]");
    }
  }
  std::sort(subdims.begin(), subdims.end());
  EXPECT_TRUE(std::adjacent_find(subdims.begin(), subdims.end()) == subdims.end());
  EXPECT_EQ(subdimension(member(2), G).exact, std::optional<Rat>(Rat(1, 4)));
}

TEST(Noncomm, SubdimensionEdgeCases) {
  EXPECT_EQ(subdimension({Rat(1, 9), Rat(4, 9)}, RatioSemigroup({Rat(1, 9)})).exact, std::optional<Rat>(Rat(0)));
  EXPECT_THROW(subdimension({Rat(4, 9)}, RatioSemigroup({Rat(1, 9)})), Error);
}

TEST(Noncomm, ZPlusCommensurable) {
  std::vector<Rat> S = {Rat(1, 3), Rat(1, 3), Rat(1, 9), Rat(1, 9)};
  std::vector<Rat> T(20, Rat(1, 27));
  for (int i = 0; i < 8; ++i) T.push_back(Rat(1, 729));
  auto z = zplus_equal(S, T, 10);
  EXPECT_EQ(z.route, "commensurable");
  EXPECT_EQ(z.outcome, ZPlusOutcome::CounterexampleFound);
  EXPECT_EQ(z.side, "S");
  auto same = zplus_equal(S, S, 10);
  EXPECT_EQ(same.outcome, ZPlusOutcome::EqualUpToBound);
  EXPECT_TRUE(same.exact);
}

// Property: the subsystem is always a subset, and all of (0,1) keeps every map.
TEST(NoncommProperty, SubIfsIsSubset) {
  std::vector<std::vector<Rat>> systems = {member(1), member(3), {Rat(1, 2), Rat(1, 4), Rat(1, 6), Rat(1, 3)}};
  std::vector<Rat> gens = {Rat(1, 2), Rat(1, 3), Rat(1, 6), Rat(1, 9), Rat(4, 9), Rat(2, 3)};
  for (auto &S : systems) {
    EXPECT_EQ(sub_ifs(S, std::nullopt).size(), S.size());
    for (auto &g : gens) {
      auto kept = sub_ifs(S, RatioSemigroup({g}));
      EXPECT_LE(kept.size(), S.size());
      for (size_t i : kept) EXPECT_LT(i, S.size());
    }
  }
}
