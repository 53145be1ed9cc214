#pragma once

#include <string>

#include "lipfrac/interval.hpp"

namespace lipfrac {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class Poly {
public:
  Poly() = default;
  explicit Poly(RatVec coeffs);
  static Poly from_int(const IntVec &c);
  static Poly monomial(const Rat &c, int deg);
  static Poly x_minus(const Rat &a);

  int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Rat &lead() const { return c_.back(); }
  Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rat(0); }
  const RatVec &coeffs() const { return c_; }

  Rat eval(const Rat &x) const;
  Interval eval(const Interval &x) const;
  int sign_at(const Rat &x) const { return sgn(eval(x)); }

  Poly derivative() const;
  Poly monic() const;
  Poly reversed(int n) const; // x^n p(1/x)
  IntVec primitive_int() const; // scaled to coprime integers, positive leading

  friend Poly operator+(const Poly &a, const Poly &b);
  friend Poly operator-(const Poly &a, const Poly &b);
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(const Poly &a, const Rat &s);
  friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }

  // Euclidean division a = q b + r.
  static void divmod(const Poly &a, const Poly &b, Poly &q, Poly &r);
  static Poly gcd(const Poly &a, const Poly &b); // monic, or zero

  std::string str(const std::string &var = "x") const;

private:
  RatVec c_;
  void trim();
};

Poly squarefree_part(const Poly &p);

// Number of distinct real roots in the half-open interval (a, b], by Sturm sequence.
int count_roots(const Poly &p, const Rat &a, const Rat &b);

// Bisection on an interval where p changes sign (p squarefree near the root).
Interval refine_root(const Poly &p, Interval iv, long bits);

// Smallest-degree integer factor of monic g that vanishes at the root isolated by iv.
// Candidates come from numerically located roots and are checked by exact division.
IntVec minimal_factor_at(const IntVec &g, const Interval &iv);

std::string int_poly_str(const IntVec &c, const std::string &var);

} // namespace lipfrac
