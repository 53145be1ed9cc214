#pragma once

#include "lipfrac/decide.hpp"

namespace lipfrac {

// A member of the family with measure root p and ratio root r. dim_hint 0 picks the
// smallest ambient dimension that fits.
IFS construct_member(const SpecPtr &spec, const Rat &r, int dim_hint = 0);

struct IdealConstruction {
  IFS ifs;
  GDGraph graph;           // E_0 and E_i = union of T(E_0), T in T_i
  long ell = 0;            // 1 - p^ell in I and r^ell < 1/6
  int dim = 0;
  std::vector<FieldElem> a, b;              // 1 - p^ell = sum a_i b_i
  std::vector<std::vector<long>> u, v;      // exponent multisets of a_i and b_i
  std::vector<std::vector<int>> reflections; // Lambda_{i,j} as coordinate bitmasks
};

// Realizes a prescribed ideal, then checks the ideal of the graph-directed presentation.
// Throws VerificationFailed on a round-trip mismatch.
IdealConstruction construct_ifs_with_ideal(const SpecPtr &spec, const Rat &r, const std::vector<FieldElem> &gens);
IdealConstruction construct_ifs_with_ideal(const SpecPtr &spec, const Rat &r, const IdealLattice &I);

struct SuitablePlan {
  long level = 0;   // level l of the family
  long order = 0;   // K
  std::vector<std::vector<size_t>> parts;   // block indices of the level l+K decomposition
  std::vector<IntVec> part_polys;           // summed polynomials per part
  BlockDecomposition refined;
  long searched_assignments = 0;
};

// Splits the level-(l+K) blocks under the given level-l blocks into parts of measure
// p^l a_i each. Throws TargetsInfeasible, AlphabetNotInIdeal.
SuitablePlan suitable_decomposition(const AttractorGeometry &g, long level, const std::vector<size_t> &family,
                                    const std::vector<FieldElem> &targets,
                                    const std::optional<IdealLattice> &alphabet_ideal = std::nullopt,
                                    long max_order = 4);

struct WitnessPair {
  size_t parent = 0;                      // pair index one level up
  std::vector<size_t> s_blocks, t_blocks; // block indices at this level
};

struct CylinderWitness {
  long depth = 0;
  Rat varrho;            // per-level contraction
  double iota = 1;       // structure constant, measured on both sides
  double bound = 1;      // L = iota^2 / varrho
  std::vector<BlockDecomposition> s_levels, t_levels; // index 0 is level 1
  std::vector<std::vector<WitnessPair>> families;     // paired cylinders per level
  bool measures_exact = false;
  long sampled_pairs = 0;
  double max_distortion = 1;
};

// Finite-depth cylinder correspondence between equal-ideal members of one family.
// Throws RouteUnsupported when the ideals differ (the dense-island route is needed).
CylinderWitness cylinder_witness(const IFS &S, const IFS &T, long depth);

} // namespace lipfrac
