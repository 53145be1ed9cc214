#pragma once

#include "lipfrac/ifs.hpp"

namespace lipfrac {

// x -> scale * orth * x + trans, with lambda the exponent of scale in r.
struct Affine {
  Rat scale = 1;
  RatMat orth;
  RatVec trans;
  long lambda = 0;

  static Affine identity(int d);
  static Affine of(const Similarity &s);
  Affine then(const Affine &inner) const; // this ∘ inner
  RatVec apply(const RatVec &x) const;
  RatVec fixed_point() const;
  bool operator==(const Affine &) const = default;
};

Rat dist2(const RatVec &a, const RatVec &b);
Rat box_dist2(const Box &a, const Box &b);
Rat box_maxdist2(const Box &a, const Box &b);
Box box_union(const Box &a, const Box &b);
bool box_strictly_inside(const Box &inner, const Box &outer);
bool box_inside(const Box &inner, const Box &outer);

// Hull box, sample points and diameter of the attractor.
struct AttractorGeometry {
  IFS ifs;
  Box hull;
  bool exact_hull = false;    // hull is the tight bounding box of E
  bool signed_perm = false;   // every orthogonal part is a signed permutation
  std::vector<RatVec> witnesses; // points of E
  Interval diam2;             // |E|^2
  long diameter_steps = 0;

  Box image_box(const Affine &a) const;
  std::vector<RatVec> image_points(const Affine &a) const;
  // (r^k |E|)^2
  Interval threshold2(long k) const;
};

// depth bounds the branch-and-bound work for the diameter in dimension >= 2.
AttractorGeometry attractor_extent(const IFS &ifs, long depth = 8, const Rat &tol = Rat(1, 1000000000));

// Interval enclosure of |E| from the squared enclosure.
Interval diameter_interval(const AttractorGeometry &g, long bits = 64);

enum class Cmp { Less, GreaterEq, Unknown };
const char *cmp_name(Cmp c);

// Compares dist(A(E), B(E)) with the threshold whose square is thr2.
Cmp certified_compare(const AttractorGeometry &g, const std::vector<Affine> &A, const std::vector<Affine> &B,
                      const Interval &thr2, int depth_cap = 10);

} // namespace lipfrac
