#pragma once

#include "lipfrac/field.hpp"

namespace lipfrac {

struct PerronData {
  IntMat xi_matrix;             // first column xi, ones on the superdiagonal
  long primitivity_exponent = 0;
  std::vector<FieldElem> p_vec; // (1, p, ..., p^(n-1))
  std::vector<FieldElem> q_vec; // right eigenvector for beta, p . q = 1
  std::vector<Interval> q_intervals;
};

PerronData perron_matrix(const SpecPtr &spec);

// Checks p * Xi = beta * p exactly in Q(beta).
bool perron_identity_holds(const PerronData &pd, const SpecPtr &spec);

// Sup-norm enclosure of p^k Xi^k a - (p.a) q, for k = 0..kmax.
std::vector<Interval> perron_convergence_errors(const PerronData &pd, const SpecPtr &spec,
                                                const IntVec &a, long kmax);

IntVec mat_vec(const IntMat &m, const IntVec &v);

} // namespace lipfrac
