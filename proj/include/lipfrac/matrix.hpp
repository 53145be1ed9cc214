#pragma once

#include <vector>

#include "lipfrac/poly.hpp"

namespace lipfrac {

using IntMat = std::vector<IntVec>;
using RatMat = std::vector<RatVec>;

IntMat identity_int(size_t n);
RatMat identity_rat(size_t n);
RatMat to_rat(const IntMat &a);

IntMat mul(const IntMat &a, const IntMat &b);
RatMat mul(const RatMat &a, const RatMat &b);
RatVec row_times(const RatVec &x, const RatMat &m);
IntVec row_times(const IntVec &x, const IntMat &m);

// Row-style Hermite normal form: nonzero rows only, upper echelon, positive
// pivots, entries above each pivot reduced into [0, pivot). If u is given it
// receives a unimodular U (rows(A) x rows(A)) with U*A = [H; 0].
IntMat hnf(const IntMat &a, IntMat *u = nullptr);

// Basis of {x integer : x*A = 0}.
IntMat integer_kernel(const IntMat &a);

// Intersection of two full-rank rational lattices given by row bases.
RatMat lattice_intersection(const RatMat &a, const RatMat &b);

// HNF of a rational lattice (scaled by the common denominator and back).
RatMat hnf_rat(const RatMat &a);

// x with x*M = b for square invertible M; throws SingularSystem otherwise.
RatVec solve_left(const RatMat &m, const RatVec &b);
RatMat inverse(const RatMat &m);
Rat determinant(RatMat m);
Poly charpoly(const RatMat &m);

} // namespace lipfrac
