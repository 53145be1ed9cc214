#include <gtest/gtest.h>

#include "lipfrac/errors.hpp"
#include "lipfrac/matrix.hpp"
#include "lipfrac/numeric.hpp"
#include "lipfrac/poly.hpp"

using namespace lipfrac;

TEST(Numeric, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rat(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rat(-4));
  EXPECT_EQ(parse_rational("0.15"), Rat(3, 20));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_EQ(to_string(Rat(6, 4)), "3/2");
}

TEST(Numeric, FactorizeRecombines) {
  for (long n : {2L, 12L, 97L, 1000000007L * 3L, 600851475143L}) {
    Int acc = 1;
    for (auto &[q, e] : factorize(Int(n))) acc *= ipow(q, e);
    EXPECT_EQ(acc, Int(n));
  }
}

TEST(Numeric, RootsAndSquares) {
  Rat r;
  EXPECT_TRUE(rational_root(Rat(8, 27), 3, &r));
  EXPECT_EQ(r, Rat(2, 3));
  EXPECT_FALSE(rational_root(Rat(2), 2, &r));
  EXPECT_EQ(isqrt(Int(99)), 9);
  EXPECT_TRUE(is_square(Int(144)));
  EXPECT_EQ(floor_div(Int(-7), Int(2)), -4);
  EXPECT_EQ(mod_pos(Int(-7), Int(3)), 2);
}

TEST(Poly, SturmCountsRoots) {
  Poly p = Poly::from_int({-2, 0, 1}); // x^2 - 2
  EXPECT_EQ(count_roots(p, Rat(-2), Rat(2)), 2);
  EXPECT_EQ(count_roots(p, Rat(0), Rat(2)), 1);
  Interval iv = refine_root(p, {Rat(1), Rat(2)}, 60);
  EXPECT_LT(iv.width(), Rat(1, 1000000));
  EXPECT_TRUE(iv.contains(Rat(1414213562, 1000000000) + Rat(1, 2000000000)) ||
              iv.lo > Rat(1414, 1000));
}

TEST(Poly, MinimalFactor) {
  // x^4 - x^3 - x - 1 = (x^2 + 1)(x^2 - x - 1), the reversal of p^4 + p^3 + p = 1.
  IntVec f = minimal_factor_at({-1, -1, 0, -1, 1}, {Rat(8, 5), Rat(17, 10)});
  EXPECT_EQ(f, IntVec({-1, -1, 1}));
}

TEST(Matrix, HnfAndKernel) {
  IntMat a = {{2, 0}, {0, 2}, {1, 1}};
  IntMat U;
  IntMat h = hnf(a, &U);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], IntVec({1, 1}));
  EXPECT_EQ(h[1], IntVec({0, 2}));
  IntMat prod = mul(U, a);
  EXPECT_EQ(prod[0], h[0]);
  EXPECT_EQ(prod[2], IntVec({0, 0}));
  IntMat k = integer_kernel({{1, 2}, {2, 4}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0][0] + 2 * k[0][1], 0);
}

TEST(Matrix, Charpoly) {
  Poly c = charpoly({{Rat(6), Rat(1)}, {Rat(1), Rat(0)}});
  EXPECT_EQ(c, Poly::from_int({-1, -6, 1}));
}
