#pragma once

#include <optional>
#include <string>

#include "lipfrac/field.hpp"

namespace lipfrac {

// x -> scale * orth * x + trans
struct Similarity {
  Rat ratio;
  RatMat orth;
  RatVec trans;
  long lambda = 0; // ratio = r^lambda, filled in by make_ifs
};

struct Box {
  RatVec lo, hi;
  bool operator==(const Box &) const = default;
};

// Finite union of open boxes.
struct OpenRegion {
  std::vector<Box> boxes;
  bool operator==(const OpenRegion &) const = default;
};

enum class IfsKind { Geometric, Abstract };

struct IFS {
  int dim = 1;
  std::vector<Similarity> maps;
  Rat r;
  std::vector<long> lambdas;
  SpecPtr spec;
  IfsKind kind = IfsKind::Geometric;
  std::optional<OpenRegion> region;

  size_t size() const { return maps.size(); }
  long max_lambda() const;
};

struct RatioRoot {
  Rat r;
  std::vector<long> exponents;
};
// Common root r of rational ratios; throws NonCommensurable.
RatioRoot ratio_root(const std::vector<Rat> &ratios);

// Smallest (m, n) with a^m = b^n.
std::optional<std::pair<long, long>> commensurable_pair(const Rat &a, const Rat &b);

bool is_orthogonal(const RatMat &m);
bool is_signed_permutation(const RatMat &m);
RatMat identity_orth(int d);

// Validates the maps and derives r, lambdas and the measure root.
IFS make_ifs(int dim, std::vector<Similarity> maps, std::optional<OpenRegion> region = std::nullopt);
// Exponent-only system (SSC assumed) with ratios r^lambda_i.
IFS abstract_ifs(const Rat &r, const std::vector<long> &lambdas);

// Enclosure of s = log p / log r with width <= precision.
Interval dimension_enclosure(const IFS &ifs, const Rat &precision);
// Same for an arbitrary list of positive rational ratios (by bisection on sum r_i^s = 1).
Interval dimension_enclosure(const std::vector<Rat> &ratios, const Rat &precision);

struct DimensionComparison {
  bool equal = false;
  long m = 0, n = 0;         // r_S^m = r_T^n
  IntVec poly_S, poly_T;     // minimal polynomials of p_S^m and p_T^n
  std::string reason;
};
// Exact comparison of similarity dimensions for commensurable ratio roots.
DimensionComparison dimensions_equal(const IFS &S, const IFS &T);

} // namespace lipfrac
