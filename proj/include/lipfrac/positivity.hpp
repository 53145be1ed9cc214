#pragma once

#include "lipfrac/ideal.hpp"

namespace lipfrac {

// Nonnegative c_0..c_m with a = sum c_j p^j, via the Xi-iteration.
IntVec positive_representation(const FieldElem &a);
FieldElem eval_p_poly(const SpecPtr &spec, const IntVec &c, long shift = 0);

// Positive b_i in Z[p] with target = sum a_i b_i.
std::vector<FieldElem> positive_combination(const std::vector<FieldElem> &gens, const FieldElem &target);
// The inductive repair argument alone, without the small-multiple search.
std::vector<FieldElem> positive_combination_inductive(const std::vector<FieldElem> &gens,
                                                      const FieldElem &target);

// Coefficients b'_i in Z[p] (any sign) with target = sum a_i b'_i.
std::vector<FieldElem> integer_combination(const std::vector<FieldElem> &gens, const FieldElem &target);

} // namespace lipfrac
