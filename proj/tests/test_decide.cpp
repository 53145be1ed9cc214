#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "lipfrac/classgroup.hpp"
#include "lipfrac/decide.hpp"
#include "lipfrac/errors.hpp"

using namespace lipfrac;
using namespace lipfrac::fixtures;

namespace {

std::vector<long> repeat(long value, int times) { return std::vector<long>(times, value); }

IFS golden_a() { return abstract_ifs(Rat(1, 3), {4, 3, 1}); }
IFS golden_b() { return abstract_ifs(Rat(1, 3), {3, 2, 2}); }

IFS ssc1_a() { return abstract_ifs(Rat(1, 3), {1, 1, 2, 2}); }
IFS ssc1_b() {
  auto l = repeat(1, 20);
  for (int i = 0; i < 8; ++i) l.push_back(2);
  return abstract_ifs(Rat(1, 27), l);
}

IFS npi_ssc_abstract() { return abstract_ifs(Rat(1, 10), {2, 1, 1, 1, 1, 1, 1}); }

} // namespace

TEST(Decide, DigitSetsAreEquivalent) {
  auto v = lipschitz_equivalent(ifs_135(), ifs_145());
  EXPECT_EQ(v.outcome, Outcome::Equivalent);
  EXPECT_EQ(v.get("iii"), "passed");
  auto w = lipschitz_equivalent(ifs_145(), ifs_135());
  EXPECT_EQ(w.outcome, v.outcome);
}

TEST(Decide, NpiDiffersFromSeparatedMember) {
  auto v = lipschitz_equivalent(npi_ifs(), npi_ssc_abstract());
  EXPECT_EQ(v.outcome, Outcome::NotEquivalent);
  EXPECT_EQ(v.failed, "iii");
  EXPECT_EQ(v.get("iii"), "failed: ideal classes differ");
  // Replaying the cited sub-operation reproduces the failure.
  auto I = ideal_of_ifs(npi_ifs()).ideal;
  EXPECT_EQ(is_principal(I), std::optional<bool>(false));
  EXPECT_EQ(lipschitz_equivalent(npi_ssc_abstract(), npi_ifs()).outcome, Outcome::NotEquivalent);
}

TEST(Decide, GoldenPairEquivalent) {
  auto v = lipschitz_equivalent(golden_a(), golden_b());
  EXPECT_EQ(v.outcome, Outcome::Equivalent);
  EXPECT_EQ(ssc_equivalent(golden_a(), golden_b()).outcome, Outcome::Equivalent);
}

TEST(Decide, DifferentCountsFailDimension) {
  auto v = lipschitz_equivalent(ifs_135(), digits_ifs({0, 1, 2, 4}));
  EXPECT_EQ(v.outcome, Outcome::NotEquivalent);
  EXPECT_EQ(v.failed, "i");
  EXPECT_FALSE(equal_ratio_shortcut(ifs_135(), digits_ifs({0, 1, 2, 4})));
}

TEST(Decide, IncommensurableRatiosFailFirst) {
  auto v = lipschitz_equivalent(abstract_ifs(Rat(1, 2), {1, 1}), abstract_ifs(Rat(1, 3), {1, 1, 1}));
  EXPECT_EQ(v.outcome, Outcome::NotEquivalent);
  EXPECT_EQ(v.failed, "ii");
}

TEST(Decide, SscRingsDiffer) {
  auto v = ssc_equivalent(ssc1_a(), ssc1_b());
  EXPECT_EQ(v.outcome, Outcome::NotEquivalent);
  EXPECT_EQ(v.get("ring_S"), "Z[√3, 1/2]");
  EXPECT_EQ(v.get("ring_T"), "Z[3√3, 1/2]");
  EXPECT_EQ(v.failed, "iii");
  EXPECT_EQ(ssc_equivalent(ssc1_a(), ssc1_a()).outcome, Outcome::Equivalent);
}

TEST(Decide, EmbedMatchesNumericValue) {
  auto S = ssc1_a().spec, T = ssc1_b().spec;
  auto b = embed_beta(T, S);
  ASSERT_TRUE(b);
  EXPECT_NEAR(b->approx(), 10 + 6 * std::sqrt(3.0), 1e-9);
  EXPECT_EQ(same_ring(S, T), std::optional<bool>(false));
  EXPECT_FALSE(embed_beta(S, npi_ifs().spec));
}

TEST(Decide, EqualRatioShortcut) {
  auto v = equal_ratio_shortcut(ifs_135(), ifs_145());
  ASSERT_TRUE(v);
  EXPECT_EQ(v->outcome, Outcome::Equivalent);
  // Consistency with the full pipeline.
  EXPECT_EQ(lipschitz_equivalent(ifs_135(), ifs_145()).outcome, Outcome::Equivalent);
}

TEST(Decide, LipschitzClassNumbers) {
  EXPECT_EQ(lipschitz_class_number(npi_ifs().spec, Rat(1, 10)), 2);
  EXPECT_EQ(lipschitz_class_number(measure_root({1, 1}), Rat(1, 2)), 1);
  EXPECT_EQ(lipschitz_class_number(spec_from_relation({12, 4}), Rat(1, 10)), 1);
}

TEST(Decide, FamilyNonempty) {
  EXPECT_EQ(family_nonempty(npi_ifs().spec, Rat(1, 10)), std::optional<bool>(true));
  EXPECT_EQ(family_nonempty(spec_from_relation({2}), Rat(1, 3)), std::optional<bool>(true));
  EXPECT_EQ(family_nonempty(spec_from_relation({0, 2}, false), Rat(1, 3)), std::optional<bool>(false));
  EXPECT_THROW(lipschitz_class_number(spec_from_relation({0, 2}, false), Rat(1, 3)), Error);
}

TEST(Decide, SameFamily) {
  EXPECT_EQ(same_family_equivalent(npi_ifs(), npi_ifs()).outcome, Outcome::Equivalent);
  EXPECT_EQ(same_family_equivalent(npi_ifs(), npi_ssc_abstract()).outcome, Outcome::NotEquivalent);
  EXPECT_THROW(same_family_equivalent(npi_ifs(), ifs_135()), Error);
}

// Property: when Z[p] is a PID, every pair in the family is equivalent.
TEST(DecideProperty, PidCollapse) {
  std::vector<IFS> fam = {ifs_135(), ifs_145(), abstract_ifs(Rat(1, 5), {1, 1, 1})};
  ASSERT_EQ(class_number_localized(fam[0].spec), 1);
  for (auto &a : fam)
    for (auto &b : fam) EXPECT_EQ(same_family_equivalent(a, b).outcome, Outcome::Equivalent);
}
