#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "lipfrac/matrix.hpp"

namespace lipfrac {

// The measure root p in (0,1) and beta = 1/p, an algebraic integer.
struct AlgebraicNumberSpec {
  IntVec relation;       // xi_1..xi_n stored at [0..n-1]; empty when only a polynomial is known
  IntVec p_min_poly;     // primitive, positive leading coefficient, low to high
  IntVec beta_min_poly;  // monic, low to high
  Interval beta_interval;
  Interval p_interval;
  int degree = 0;
  Int norm_beta;         // N(beta) = (-1)^d * constant term
  IntMat reduction;      // coordinates of beta^d .. beta^(2d-2)
  bool relation_primitive = true;

  std::string relation_str() const;
  Interval beta_enclosure(long bits) const;
};

using SpecPtr = std::shared_ptr<const AlgebraicNumberSpec>;

// Root of sum_{l} xi_l p^l = 1 from a multiset of exponents lambda_i.
SpecPtr measure_root(const std::vector<long> &exponents, bool strict = true);
SpecPtr spec_from_relation(const IntVec &xi, bool strict = true);
// Spec from a monic polynomial and an isolating interval of a root > 1.
SpecPtr spec_from_beta_poly(const IntVec &monic, const Interval &iv);

bool same_spec(const SpecPtr &a, const SpecPtr &b);
// Whether the isolating intervals a, b of roots of poly isolate the same root.
bool same_root(const IntVec &poly, const Interval &a, const Interval &b);

// Element of Q(beta) in the power basis 1, beta, ..., beta^(d-1).
class FieldElem {
public:
  FieldElem() = default;
  FieldElem(SpecPtr spec, RatVec coords);

  static FieldElem from_rat(const SpecPtr &s, const Rat &q);
  static FieldElem beta(const SpecPtr &s);
  static FieldElem p(const SpecPtr &s);
  // sum_k c_k p^k, exponents may be negative.
  static FieldElem from_p_laurent(const SpecPtr &s, const std::map<long, Rat> &terms);

  const SpecPtr &spec() const { return spec_; }
  const RatVec &coords() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()); }

  bool is_zero() const;
  bool is_integral() const; // integer coordinates, i.e. in Z[beta]
  IntVec int_coords() const;

  FieldElem operator+(const FieldElem &o) const;
  FieldElem operator-(const FieldElem &o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem &o) const;
  FieldElem operator*(const Rat &s) const;
  FieldElem operator/(const FieldElem &o) const { return *this * o.inverse(); }
  FieldElem inverse() const;
  FieldElem pow(long e) const;
  bool operator==(const FieldElem &o) const { return c_ == o.c_; }
  bool operator!=(const FieldElem &o) const { return !(*this == o); }

  // Matrix of y -> y*this in the power basis (row convention).
  RatMat mult_matrix() const;
  Interval enclosure(long bits = 96) const;
  int sign() const;
  bool positive() const { return sign() > 0; }
  double approx() const;
  Poly minimal_polynomial() const;

  std::string str() const; // in terms of beta

private:
  SpecPtr spec_;
  RatVec c_;
  void check(const FieldElem &o) const;
};

// Canonical form x = beta^{-k} * y with y integral and k >= 0 minimal, if x in Z[p].
struct ZpForm {
  long k = 0;
  IntVec y;
};
std::optional<ZpForm> zp_canonical(const FieldElem &x);
bool member_of_Zp(const FieldElem &x);
long membership_bound(const FieldElem &x);

// a = p^l * sum_i c_i p^i, rendered "c_0 p^l + ..." when possible.
std::string p_laurent_str(const std::map<long, Int> &terms);

} // namespace lipfrac
