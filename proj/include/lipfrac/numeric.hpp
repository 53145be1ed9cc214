#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lipfrac/errors.hpp"

namespace lipfrac {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Canonical text form: "a/b" in lowest terms, or "a" for integers.
std::string to_string(const Rat &q);
std::string to_string(const Int &z);
Rat parse_rational(const std::string &s);

Int ipow(const Int &b, unsigned long e);
Rat rpow(const Rat &b, long e);
Int isqrt(const Int &n);
bool is_square(const Int &n, Int *root = nullptr);
Int floor_div(const Int &a, const Int &b);
Int mod_pos(const Int &a, const Int &b);
Int floor_rat(const Rat &q);
Int ceil_rat(const Rat &q);
Int gcd(const Int &a, const Int &b);
Int lcm(const Int &a, const Int &b);
long bit_length(const Int &n);
int sgn(const Rat &q);

// Prime factorization of |n| (n != 0), primes ascending.
std::vector<std::pair<Int, unsigned>> factorize(const Int &n);

// Exact b-th root of a nonnegative rational, if it exists.
bool rational_root(const Rat &q, unsigned long b, Rat *out);

// Dyadic approximation helpers used when rounding interval endpoints outward.
Rat round_down_dyadic(const Rat &q, long bits);
Rat round_up_dyadic(const Rat &q, long bits);

double to_double(const Rat &q);

} // namespace lipfrac
