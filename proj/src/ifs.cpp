#include "lipfrac/ifs.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "lipfrac/errors.hpp"

namespace lipfrac {

long IFS::max_lambda() const { return lambdas.empty() ? 0 : *std::max_element(lambdas.begin(), lambdas.end()); }

namespace {

// Prime exponent vector of a positive rational.
std::map<Int, long> prime_exponents(const Rat &q) {
  std::map<Int, long> out;
  if (q.get_num() != 1 || q.get_den() != 1) {
    if (q.get_num() != 1)
      for (auto &[pr, e] : factorize(q.get_num())) out[pr] += e;
    if (q.get_den() != 1)
      for (auto &[pr, e] : factorize(q.get_den())) out[pr] -= e;
  }
  return out;
}

Rat from_exponents(const std::map<Int, long> &e) {
  Rat q = 1;
  for (auto &[pr, k] : e) q *= rpow(Rat(pr), k);
  return q;
}

} // namespace

RatioRoot ratio_root(const std::vector<Rat> &ratios) {
  if (ratios.empty()) fail(ErrorCode::EmptyInput, "no ratios");
  std::vector<std::map<Int, long>> ev;
  for (auto &q : ratios) {
    if (q <= 0 || q >= 1) fail(ErrorCode::InvalidInput, "ratio " + to_string(q) + " not in (0,1)");
    ev.push_back(prime_exponents(q));
  }
  // All vectors must be positive multiples of one primitive vector v, r = prod p^v.
  std::map<Int, long> base = ev[0];
  long g = 0;
  for (auto &[pr, k] : base) g = std::gcd(g, std::abs(k));
  for (auto &[pr, k] : base) k /= g;
  RatioRoot out;
  for (size_t i = 0; i < ev.size(); ++i) {
    // ev[i] = t * base for a rational t; find t from the first prime.
    auto lead = base.begin();
    if (!ev[i].count(lead->first)) fail(ErrorCode::NonCommensurable, "ratios are not commensurable");
    Rat t(ev[i].at(lead->first), lead->second);
    t.canonicalize();
    std::map<Int, long> check;
    for (auto &[pr, k] : base) {
      Rat v = t * k;
      if (v.get_den() != 1) fail(ErrorCode::NonCommensurable, "ratios are not commensurable");
      check[pr] = v.get_num().get_si();
    }
    if (check != ev[i]) fail(ErrorCode::NonCommensurable, "ratios are not commensurable");
    if (t.get_den() != 1) {
      // Refine the base so every ratio is an integer power.
      for (auto &[pr, k] : base) k /= t.get_den().get_si();
      i = static_cast<size_t>(-1);
      continue;
    }
  }
  out.r = from_exponents(base);
  if (out.r > 1) {
    out.r = 1 / out.r;
    for (auto &[pr, k] : base) k = -k;
  }
  for (auto &e : ev) {
    auto lead = base.begin();
    out.exponents.push_back(e.at(lead->first) / lead->second);
  }
  return out;
}

std::optional<std::pair<long, long>> commensurable_pair(const Rat &a, const Rat &b) {
  try {
    auto rr = ratio_root({a, b});
    long m = rr.exponents[0], n = rr.exponents[1];
    long g = std::gcd(m, n);
    // a^n' = b^m' with a = r^m, b = r^n.
    return std::make_pair(n / g, m / g);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::NonCommensurable) return std::nullopt;
    throw;
  }
}

bool is_orthogonal(const RatMat &m) {
  size_t d = m.size();
  for (auto &row : m)
    if (row.size() != d) return false;
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) {
      Rat s = 0;
      for (size_t k = 0; k < d; ++k) s += m[k][i] * m[k][j];
      if (s != (i == j ? 1 : 0)) return false;
    }
  return true;
}

bool is_signed_permutation(const RatMat &m) {
  for (auto &row : m) {
    int nz = 0;
    for (auto &v : row) {
      if (v == 0) continue;
      if (v != 1 && v != -1) return false;
      ++nz;
    }
    if (nz != 1) return false;
  }
  return is_orthogonal(m);
}

RatMat identity_orth(int d) { return identity_rat(d); }

IFS make_ifs(int dim, std::vector<Similarity> maps, std::optional<OpenRegion> region) {
  if (dim < 1) fail(ErrorCode::InvalidInput, "ambient dimension must be positive");
  if (maps.empty()) fail(ErrorCode::EmptyInput, "IFS has no maps");
  std::vector<Rat> ratios;
  // Hand-built rationals may be uncanonical; gmp arithmetic assumes canonical operands.
  auto canon = [](Rat &q) { q.canonicalize(); };
  for (auto &m : maps) {
    canon(m.ratio);
    for (auto &row : m.orth)
      for (auto &v : row) canon(v);
    for (auto &v : m.trans) canon(v);
    if (m.ratio <= 0 || m.ratio >= 1) fail(ErrorCode::InvalidInput, "ratio must lie in (0,1)");
    if (m.orth.empty()) m.orth = identity_orth(dim);
    if (static_cast<int>(m.orth.size()) != dim || !is_orthogonal(m.orth))
      fail(ErrorCode::InvalidInput, "orthogonal part is not an exact orthogonal matrix");
    if (static_cast<int>(m.trans.size()) != dim) fail(ErrorCode::InvalidInput, "translation has wrong length");
    ratios.push_back(m.ratio);
  }
  if (region) {
    for (auto &b : region->boxes) {
      for (auto &v : b.lo) canon(v);
      for (auto &v : b.hi) canon(v);
    }
    if (region->boxes.empty()) fail(ErrorCode::InvalidInput, "open region has no boxes");
    for (auto &b : region->boxes) {
      if (static_cast<int>(b.lo.size()) != dim || static_cast<int>(b.hi.size()) != dim)
        fail(ErrorCode::InvalidInput, "region box has wrong dimension");
      for (int j = 0; j < dim; ++j)
        if (!(b.lo[j] < b.hi[j])) fail(ErrorCode::InvalidInput, "region box is empty");
    }
  }
  auto rr = ratio_root(ratios);
  IFS f;
  f.dim = dim;
  f.r = rr.r;
  f.lambdas = rr.exponents;
  for (size_t i = 0; i < maps.size(); ++i) maps[i].lambda = rr.exponents[i];
  f.maps = std::move(maps);
  f.region = std::move(region);
  f.kind = IfsKind::Geometric;
  f.spec = measure_root(f.lambdas, true);
  return f;
}

IFS abstract_ifs(const Rat &r, const std::vector<long> &lambdas) {
  if (r <= 0 || r >= 1) fail(ErrorCode::InvalidInput, "ratio root must lie in (0,1)");
  IFS f;
  f.dim = 1;
  f.r = r;
  f.lambdas = lambdas;
  f.kind = IfsKind::Abstract;
  f.spec = measure_root(lambdas, true);
  for (long l : lambdas) f.maps.push_back({rpow(r, l), {}, {}, l});
  return f;
}

namespace {

Rat mpfr_to_rat(const mpfr_t x) {
  mpz_t z;
  mpz_init(z);
  mpfr_exp_t e = mpfr_get_z_2exp(z, x);
  Int zi(z);
  mpz_clear(z);
  Rat q(zi);
  if (e >= 0)
    q *= Rat(ipow(Int(2), static_cast<unsigned long>(e)));
  else
    q /= Rat(ipow(Int(2), static_cast<unsigned long>(-e)));
  return q;
}

// [lo, hi] enclosing -log(x) for an interval of positive rationals below 1.
Interval neg_log(const Interval &x, mpfr_prec_t prec) {
  mpfr_t a, b;
  mpfr_init2(a, prec);
  mpfr_init2(b, prec);
  mpq_t q;
  mpq_init(q);
  mpq_set(q, x.hi.get_mpq_t());
  mpfr_set_q(a, q, MPFR_RNDU);
  mpfr_log(a, a, MPFR_RNDU); // log(hi) rounded up, so -log(hi) is a lower bound
  mpq_set(q, x.lo.get_mpq_t());
  mpfr_set_q(b, q, MPFR_RNDD);
  mpfr_log(b, b, MPFR_RNDD);
  Interval out{-mpfr_to_rat(a), -mpfr_to_rat(b)};
  mpq_clear(q);
  mpfr_clear(a);
  mpfr_clear(b);
  return out;
}

} // namespace

Interval dimension_enclosure(const IFS &ifs, const Rat &precision) {
  for (long bits = 64;; bits *= 2) {
    Interval b = ifs.spec->beta_enclosure(bits);
    Interval p{1 / b.hi, 1 / b.lo};
    Interval A = neg_log(p, bits), B = neg_log({ifs.r, ifs.r}, bits);
    Interval s{A.lo / B.hi, A.hi / B.lo};
    if (s.width() <= precision || bits > 1 << 16) return s;
  }
}

Interval dimension_enclosure(const std::vector<Rat> &ratios, const Rat &precision) {
  if (ratios.empty()) fail(ErrorCode::EmptyInput, "no ratios");
  if (ratios.size() == 1) return {Rat(0), Rat(0)};
  // sum r_i^s is strictly decreasing in s; bisect with certified MPFR bounds on each term.
  auto sum_bounds = [&](const Rat &s, mpfr_prec_t prec) {
    mpfr_t acc_lo, acc_hi, t, e;
    mpfr_inits2(prec, acc_lo, acc_hi, t, e, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(acc_lo, 0, MPFR_RNDN);
    mpfr_set_ui(acc_hi, 0, MPFR_RNDN);
    mpq_t q;
    mpq_init(q);
    for (auto &r : ratios) {
      // r^s = exp(s log r); s >= 0 and log r < 0.
      for (int side = 0; side < 2; ++side) {
        mpfr_rnd_t dir = side == 0 ? MPFR_RNDD : MPFR_RNDU;
        mpfr_rnd_t opp = side == 0 ? MPFR_RNDU : MPFR_RNDD;
        mpq_set(q, r.get_mpq_t());
        mpfr_set_q(t, q, dir);
        mpfr_log(t, t, dir); // log r < 0, rounded towards the side being bounded
        mpq_set(q, s.get_mpq_t());
        mpfr_set_q(e, q, opp);
        mpfr_mul(t, t, e, dir);
        mpfr_exp(t, t, dir);
        mpfr_add(side == 0 ? acc_lo : acc_hi, side == 0 ? acc_lo : acc_hi, t, dir);
      }
    }
    Interval out{mpfr_to_rat(acc_lo), mpfr_to_rat(acc_hi)};
    mpq_clear(q);
    mpfr_clears(acc_lo, acc_hi, t, e, static_cast<mpfr_ptr>(nullptr));
    return out;
  };
  Rat lo = 0, hi = 1;
  while (sum_bounds(hi, 128).hi > 1) hi *= 2;
  while (hi - lo > precision) {
    Rat mid = (lo + hi) / 2;
    Interval v = sum_bounds(mid, 256);
    if (v.lo > 1)
      lo = mid;
    else if (v.hi < 1)
      hi = mid;
    else
      break; // the root sits inside the rounding noise of mid
  }
  return {lo, hi};
}

namespace {

// Enclosure of x tight enough to isolate a single root of its minimal polynomial.
Interval isolating_enclosure(const FieldElem &x, const IntVec &poly) {
  Poly P = Poly::from_int(poly);
  for (long bits = 64; bits < 1 << 16; bits *= 2) {
    Interval iv = x.enclosure(bits);
    Rat lo = iv.lo, hi = iv.hi;
    int c = count_roots(P, lo, hi) + (P.sign_at(lo) == 0 ? 1 : 0);
    if (c == 1) return iv;
  }
  fail(ErrorCode::VerificationFailed, "could not isolate a root");
}

} // namespace

DimensionComparison dimensions_equal(const IFS &S, const IFS &T) {
  auto mn = commensurable_pair(S.r, T.r);
  if (!mn) fail(ErrorCode::NotComparable, "ratio roots are multiplicatively independent");
  DimensionComparison out;
  out.m = mn->first;
  out.n = mn->second;
  FieldElem a = FieldElem::p(S.spec).pow(out.m), b = FieldElem::p(T.spec).pow(out.n);
  out.poly_S = a.minimal_polynomial().primitive_int();
  out.poly_T = b.minimal_polynomial().primitive_int();
  if (out.poly_S != out.poly_T) {
    out.reason = "p_S^m and p_T^n have different minimal polynomials";
    return out;
  }
  Interval ia = isolating_enclosure(a, out.poly_S), ib = isolating_enclosure(b, out.poly_T);
  out.equal = same_root(out.poly_S, ia, ib);
  out.reason = out.equal ? "p_S^m = p_T^n (same minimal polynomial and root)"
                         : "p_S^m and p_T^n are different roots of one polynomial";
  return out;
}

} // namespace lipfrac
