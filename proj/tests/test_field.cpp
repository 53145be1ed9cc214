#include <cmath>

#include <gtest/gtest.h>

#include "lipfrac/errors.hpp"
#include "lipfrac/field.hpp"
#include "lipfrac/perron.hpp"

using namespace lipfrac;

namespace {

SpecPtr npi() { return measure_root({1, 1, 1, 1, 1, 1, 2}); }

// Independent float oracle: bisection on sum p^lambda = 1.
double float_root(const std::vector<long> &lam) {
  double lo = 0, hi = 1;
  for (int it = 0; it < 200; ++it) {
    double mid = (lo + hi) / 2, s = 0;
    for (long l : lam) s += std::pow(mid, static_cast<double>(l));
    (s < 1 ? lo : hi) = mid;
  }
  return lo;
}

} // namespace

TEST(MeasureRoot, RationalCase) {
  auto s = measure_root({1, 1});
  EXPECT_EQ(s->beta_min_poly, IntVec({-2, 1}));
  EXPECT_EQ(FieldElem::p(s), FieldElem::from_rat(s, Rat(1, 2)));
}

TEST(MeasureRoot, QuadraticFromSevenMaps) {
  auto s = npi();
  EXPECT_EQ(s->beta_min_poly, IntVec({-1, -6, 1}));
  EXPECT_EQ(s->relation_str(), "p^2 + 6p = 1");
  FieldElem p = FieldElem::p(s);
  EXPECT_EQ(p * p + p * Rat(6), FieldElem::from_rat(s, 1));
  EXPECT_NEAR(p.approx(), std::sqrt(10.0) - 3, 1e-12);
}

TEST(MeasureRoot, ReducibleReversal) {
  auto s = measure_root({1, 3, 4});
  EXPECT_EQ(s->degree, 2);
  EXPECT_EQ(s->beta_min_poly, IntVec({-1, -1, 1}));
  EXPECT_EQ(s->p_min_poly, IntVec({-1, 1, 1}));
  EXPECT_NEAR(FieldElem::p(s).approx(), (std::sqrt(5.0) - 1) / 2, 1e-12);
}

TEST(MeasureRoot, Errors) {
  EXPECT_THROW(measure_root({}), Error);
  try {
    measure_root({2, 4});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::GcdViolation);
  }
  EXPECT_NO_THROW(measure_root({2, 4}, false));
}

TEST(MeasureRoot, IntervalsMatchFloatOracle) {
  for (auto lam : std::vector<std::vector<long>>{{1, 2}, {1, 1, 3}, {2, 3, 3}, {1, 4, 4, 5}, {1, 2, 2, 2, 7}}) {
    auto s = measure_root(lam);
    double p = float_root(lam);
    EXPECT_TRUE(s->p_interval.contains(Rat(p)) || std::abs(to_double(s->p_interval.mid()) - p) < 1e-12);
    // Reciprocity: the product of the two enclosures brackets 1.
    Interval prod = s->p_interval * s->beta_interval;
    EXPECT_TRUE(prod.contains(Rat(1)));
    EXPECT_EQ(s->beta_min_poly.back(), 1);
  }
}

TEST(FieldElem, ArithmeticAndSign) {
  auto s = npi();
  FieldElem b = FieldElem::beta(s), one = FieldElem::from_rat(s, 1);
  EXPECT_EQ(b * FieldElem::p(s), one);
  FieldElem x = b - FieldElem::from_rat(s, Rat(6)); // beta - 6 = 1/beta > 0
  EXPECT_EQ(x.sign(), 1);
  FieldElem tiny = FieldElem::p(s).pow(40) - FieldElem::p(s).pow(41) * Rat(6) - FieldElem::p(s).pow(42);
  EXPECT_EQ(tiny, FieldElem::from_rat(s, 0));
  EXPECT_EQ((one - b * Rat(1, 6)).sign(), -1);
  EXPECT_EQ((b.inverse() * b), one);
}

TEST(Membership, ZpCases) {
  // beta = 6 + 2 sqrt 10, p = (sqrt 10 - 3) / 2
  auto s = spec_from_beta_poly({-4, -12, 1}, {Rat(12), Rat(13)});
  EXPECT_TRUE(member_of_Zp(FieldElem::from_rat(s, Rat(1, 2))));
  EXPECT_FALSE(member_of_Zp(FieldElem::from_rat(s, Rat(1, 3))));
  EXPECT_TRUE(member_of_Zp(FieldElem::p(s)));
  EXPECT_FALSE(member_of_Zp(FieldElem::from_rat(s, Rat(1, 8)) * FieldElem::beta(s) + FieldElem::from_rat(s, Rat(1, 3))));
}

TEST(Membership, MatchesBruteForce) {
  // Brute force: beta^k x integral for some k <= 40.
  auto s = npi();
  auto t = spec_from_beta_poly({-4, -12, 1}, {Rat(12), Rat(13)});
  for (auto sp : {s, t})
    for (int a = -4; a <= 4; ++a)
      for (int den : {1, 2, 3, 4, 8}) {
        FieldElem x = FieldElem::from_rat(sp, Rat(a, den)) + FieldElem::beta(sp) * Rat(1, den);
        bool brute = false;
        FieldElem y = x;
        for (int k = 0; k <= 40 && !brute; ++k) {
          brute = y.is_integral();
          y = y * FieldElem::beta(sp);
        }
        EXPECT_EQ(member_of_Zp(x), brute) << x.str();
      }
}

TEST(Perron, Examples) {
  auto s = npi();
  PerronData pd = perron_matrix(s);
  EXPECT_EQ(pd.xi_matrix, IntMat({{6, 1}, {1, 0}}));
  EXPECT_EQ(pd.primitivity_exponent, 2);
  EXPECT_TRUE(perron_identity_holds(pd, s));

  auto odd = spec_from_relation({1, 0, 1});
  PerronData pd2 = perron_matrix(odd);
  // Oracle: boolean powers until positive.
  IntMat m = pd2.xi_matrix, acc = m;
  long k = 1;
  auto positive = [](const IntMat &a) {
    for (auto &r : a)
      for (auto &v : r)
        if (v <= 0) return false;
    return true;
  };
  while (!positive(acc)) acc = mul(acc, m), ++k;
  EXPECT_EQ(pd2.primitivity_exponent, k);

  try {
    perron_matrix(measure_root({2, 4}, false));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrimitiveInput);
  }
}

TEST(Perron, ConvergenceShrinks) {
  for (auto lam : std::vector<std::vector<long>>{{1, 1, 1, 1, 1, 1, 2}, {1, 3, 4}, {1, 2}}) {
    auto s = measure_root(lam);
    PerronData pd = perron_matrix(s);
    IntVec a(pd.xi_matrix.size(), 1);
    a[0] = 3;
    auto err = perron_convergence_errors(pd, s, a, 60);
    ASSERT_EQ(err.size(), 61u);
    EXPECT_LT(err.back().hi, Rat(1, 1000));
    EXPECT_LT(err.back().hi, err[5].lo);
  }
}
