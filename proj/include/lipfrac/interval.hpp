#pragma once

#include <algorithm>

#include "lipfrac/numeric.hpp"

namespace lipfrac {

// Closed rational interval [lo, hi].
struct Interval {
  Rat lo, hi;

  Interval() = default;
  Interval(const Rat &v) : lo(v), hi(v) {}
  Interval(const Rat &a, const Rat &b) : lo(a), hi(b) {}

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat &x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool positive() const { return lo > 0; }
  bool negative() const { return hi < 0; }
  bool overlaps(const Interval &o) const { return lo <= o.hi && o.lo <= hi; }

  // Outward dyadic rounding keeps endpoint sizes bounded in long iterations.
  Interval rounded(long bits) const {
    return {round_down_dyadic(lo, bits), round_up_dyadic(hi, bits)};
  }
};

inline Interval operator+(const Interval &a, const Interval &b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline Interval operator-(const Interval &a, const Interval &b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline Interval operator-(const Interval &a) { return {-a.hi, -a.lo}; }
inline Interval operator*(const Interval &a, const Interval &b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
inline Interval operator*(const Interval &a, const Rat &s) {
  if (s >= 0) return {a.lo * s, a.hi * s};
  return {a.hi * s, a.lo * s};
}
inline Interval operator/(const Interval &a, const Interval &b) {
  if (b.contains_zero()) fail(ErrorCode::InvalidInput, "interval division by zero");
  return a * Interval(Rat(1) / b.hi, Rat(1) / b.lo);
}
inline Interval hull(const Interval &a, const Interval &b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}
inline Interval ipow(const Interval &a, unsigned long e) {
  Interval r(Rat(1));
  for (unsigned long i = 0; i < e; ++i) r = r * a;
  return r;
}
inline Interval iabs(const Interval &a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {Rat(0), Rat(-a.lo) > a.hi ? Rat(-a.lo) : a.hi};
}

} // namespace lipfrac
