#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipfrac/ifs.hpp"

namespace lipfrac {

// Multiplicative semigroup of (0,1) generated by rationals, stored as exponent vectors
// over the primes dividing the generators.
struct RatioSemigroup {
  std::vector<Rat> generators;
  std::vector<Int> primes;
  IntMat exponents; // exponents[i][q] = v_{primes[q]}(generators[i])

  explicit RatioSemigroup(std::vector<Rat> gens);
  IntVec exponent_vector(const Rat &x) const; // throws InvalidInput outside the prime support
  bool supports(const Rat &x) const;
};

// Nonnegative rational x with A x = b, if any. Exact phase-one simplex.
std::optional<RatVec> nonneg_solution(const RatMat &A, const RatVec &b);

// x^u in sgp for some u >= 1; returns the least such u.
std::optional<long> power_in_semigroup(const Rat &x, const RatioSemigroup &G);

struct SgpComparison {
  bool equivalent = false;
  long u = 0, v = 0;       // r_i^u in sgp(T), t_j^v in sgp(S)
  std::string obstruction; // generator whose powers never enter the other semigroup
};
SgpComparison sgp_equivalent(const std::vector<Rat> &S, const std::vector<Rat> &T);

// Exact similarity dimension when it is rational and every r_i^s is rational, or when
// all ratios are equal and N^b = r^(-a).
std::optional<Rat> exact_dimension(const std::vector<Rat> &ratios);

enum class ZPlusOutcome { EqualUpToBound, CounterexampleFound };
const char *zplus_name(ZPlusOutcome o);

struct ZPlusComparison {
  ZPlusOutcome outcome = ZPlusOutcome::EqualUpToBound;
  long bound = 0;
  std::string route;          // "rational" or "commensurable"
  bool exact = false;         // the answer holds without the bound
  std::string common;         // shared description, e.g. "Z+[1/3]"
  std::string counterexample; // element of one side missing from the other
  std::string side;           // "S" or "T": the side that contains the counterexample
};
// Throws FieldUnsupported when neither route applies, InvalidInput when dims differ.
ZPlusComparison zplus_equal(const std::vector<Rat> &S, const std::vector<Rat> &T, long degree_bound);

// Map indices i with (r_i sgp S) ∩ G nonempty. G = nullopt means all of (0,1).
std::vector<size_t> sub_ifs(const std::vector<Rat> &S, const std::optional<RatioSemigroup> &G);

struct SubDimension {
  std::vector<size_t> kept;
  std::optional<Rat> exact;
  Interval enclosure;
};
// Throws EmptySubsystem. A single map has dimension 0.
SubDimension subdimension(const std::vector<Rat> &S, const std::optional<RatioSemigroup> &G);

// Replaces map `index` (ratio r) by maps of ratios r^mu_j, then keeps replacing the newest
// copies the same way. Returns the systems 1..n; throws SubstitutionInvalid.
std::vector<std::vector<Rat>> infinite_family(const std::vector<Rat> &S, size_t index,
                                              const std::vector<long> &mu, long n);

// Ratios of the maps, also for systems that are not commensurable.
std::vector<Rat> ratios_of(const IFS &ifs);

} // namespace lipfrac
