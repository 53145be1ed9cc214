#pragma once

#include "lipfrac/field.hpp"

namespace lipfrac {

// Full-rank Z[beta]-submodule of Z[beta] in row HNF. When saturated, it is the
// canonical representative I*R ∩ Z[beta] of an ideal of Z[p] = Z[beta, 1/beta].
struct IdealLattice {
  SpecPtr owner;
  IntMat hnf;
  bool saturated = false;

  int degree() const { return static_cast<int>(hnf.size()); }
  Int index() const; // [Z[beta] : I]
  bool operator==(const IdealLattice &o) const {
    return same_spec(owner, o.owner) && hnf == o.hnf && saturated == o.saturated;
  }
  std::string str() const;
};

// Z[beta]-module spanned by the given integral elements (not saturated).
IdealLattice order_module(const SpecPtr &spec, const std::vector<IntVec> &gens);
IdealLattice ideal_hnf(const std::vector<FieldElem> &gens, const SpecPtr &spec);
IdealLattice saturate(const IdealLattice &I);
IdealLattice colon_beta(const IdealLattice &I);
IdealLattice whole_ring(const SpecPtr &spec);
bool is_whole_ring(const IdealLattice &I);

bool lattice_contains(const IntMat &hnf, const IntVec &y);
IntVec reduce_mod(const IntMat &hnf, IntVec v);
// Membership in the Z[p]-ideal represented by a saturated lattice.
bool ideal_contains(const IdealLattice &I, const FieldElem &x);
std::vector<FieldElem> ideal_generators(const IdealLattice &I);
// Z[beta]-module structure check: beta times each basis row stays inside.
bool is_module(const IdealLattice &I);

long find_unipotent_level(const IdealLattice &I);

// Saturated ideal generated by c * I.
IdealLattice scale_ideal(const IdealLattice &I, const FieldElem &c);

} // namespace lipfrac
