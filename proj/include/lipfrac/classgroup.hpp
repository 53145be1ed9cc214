#pragma once

#include <optional>

#include "lipfrac/ideal.hpp"
#include "lipfrac/quadratic.hpp"

namespace lipfrac {

// Classes of Z[beta]-lattices and of Z[p]-ideals for a quadratic spec.
struct ClassStructure {
  QuadInfo info;
  struct LatticeClass {
    Int disc;     // discriminant of the multiplier ring
    Form key;     // wide class key
    Form rep;     // representative form, a > 0
    IntMat lattice;
    int component = -1; // localized class index
  };
  std::vector<LatticeClass> classes;
  int localized_count = 0;

  int class_of(const IntMat &lattice) const;
};

ClassStructure class_structure(const SpecPtr &spec);

// h(Z[beta]) and h(Z[p]); degree 1 gives 1, degree >= 3 throws DegreeUnsupported.
long class_number_order(const SpecPtr &spec);
long class_number_localized(const SpecPtr &spec);

// nullopt means Unknown (degree >= 3 after the search bound).
std::optional<bool> same_class(const IdealLattice &I, const IdealLattice &J);
std::optional<bool> is_principal(const IdealLattice &I);

// c with sat(c J) = sat(I), searched over small elements of the colon lattice.
std::optional<FieldElem> find_scaling(const IdealLattice &I, const IdealLattice &J, long box = 12);

// (I : J) as a rational lattice in beta coordinates.
RatMat colon_lattice(const IdealLattice &I, const IdealLattice &J);

} // namespace lipfrac
