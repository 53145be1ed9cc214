#include "lipfrac/perron.hpp"

#include <algorithm>
#include <numeric>

namespace lipfrac {

IntVec mat_vec(const IntMat &m, const IntVec &v) {
  IntVec r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (m[i][j] != 0) r[i] += m[i][j] * v[j];
  return r;
}

PerronData perron_matrix(const SpecPtr &spec) {
  const IntVec &xi = spec->relation;
  if (xi.empty() || xi.back() == 0)
    fail(ErrorCode::NotPrimitiveInput, "relation is empty or its last coefficient is zero");
  long g = 0;
  for (size_t l = 0; l < xi.size(); ++l)
    if (xi[l] > 0) g = std::gcd(g, static_cast<long>(l + 1));
  if (g != 1) fail(ErrorCode::NotPrimitiveInput, "gcd of exponents is " + std::to_string(g));

  const size_t n = xi.size();
  PerronData pd;
  pd.xi_matrix.assign(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) {
    pd.xi_matrix[i][0] = xi[i];
    if (i + 1 < n) pd.xi_matrix[i][i + 1] = 1;
  }

  // Least k with Xi^k > 0; Wielandt's bound (n-1)^2 + 1 caps the search.
  std::vector<std::vector<char>> pat(n, std::vector<char>(n)), cur;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) pat[i][j] = pd.xi_matrix[i][j] > 0;
  cur = pat;
  const long cap = static_cast<long>((n - 1) * (n - 1) + 1);
  for (long k = 1; k <= cap; ++k) {
    bool all = true;
    for (auto &row : cur)
      for (char c : row) all = all && c;
    if (all) {
      pd.primitivity_exponent = k;
      break;
    }
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t t = 0; t < n; ++t)
        if (cur[i][t])
          for (size_t j = 0; j < n; ++j) next[i][j] |= pat[t][j];
    cur = next;
  }
  if (pd.primitivity_exponent == 0)
    fail(ErrorCode::VerificationFailed, "Xi is not primitive despite gcd 1");

  FieldElem p = FieldElem::p(spec), b = FieldElem::beta(spec);
  FieldElem pw = FieldElem::from_rat(spec, 1);
  for (size_t i = 0; i < n; ++i) {
    pd.p_vec.push_back(pw);
    pw = pw * p;
  }
  // Xi q = beta q: q_{i+1} = beta q_i - xi_{i+1} q_0.
  std::vector<FieldElem> q{FieldElem::from_rat(spec, 1)};
  for (size_t i = 0; i + 1 < n; ++i) q.push_back(b * q[i] - q[0] * Rat(xi[i]));
  FieldElem dot = FieldElem::from_rat(spec, 0);
  for (size_t i = 0; i < n; ++i) dot = dot + pd.p_vec[i] * q[i];
  FieldElem inv = dot.inverse();
  for (auto &v : q) v = v * inv;
  pd.q_vec = q;
  for (auto &v : q) {
    if (!v.positive()) fail(ErrorCode::VerificationFailed, "Perron vector is not positive");
    pd.q_intervals.push_back(v.enclosure(96));
  }
  return pd;
}

bool perron_identity_holds(const PerronData &pd, const SpecPtr &spec) {
  const size_t n = pd.xi_matrix.size();
  FieldElem b = FieldElem::beta(spec);
  for (size_t j = 0; j < n; ++j) {
    FieldElem lhs = FieldElem::from_rat(spec, 0);
    for (size_t i = 0; i < n; ++i)
      if (pd.xi_matrix[i][j] != 0) lhs = lhs + pd.p_vec[i] * Rat(pd.xi_matrix[i][j]);
    if (lhs != b * pd.p_vec[j]) return false;
  }
  return true;
}

std::vector<Interval> perron_convergence_errors(const PerronData &pd, const SpecPtr &spec,
                                                const IntVec &a, long kmax) {
  const size_t n = pd.xi_matrix.size();
  FieldElem pa = FieldElem::from_rat(spec, 0);
  for (size_t i = 0; i < n; ++i) pa = pa + pd.p_vec[i] * Rat(a[i]);
  const long bits = 400;
  std::vector<Interval> limit;
  for (size_t i = 0; i < n; ++i) limit.push_back((pa * pd.q_vec[i]).enclosure(bits));
  Interval p = spec->p_interval;
  if (p.width() > Rat(1) / Rat(ipow(2, bits))) {
    Interval b = spec->beta_enclosure(bits);
    p = Interval(Rat(1) / b.hi, Rat(1) / b.lo);
  }
  std::vector<Interval> errs;
  IntVec v = a;
  Interval pk(Rat(1));
  for (long k = 0; k <= kmax; ++k) {
    Interval worst(Rat(0));
    for (size_t i = 0; i < n; ++i) {
      Interval e = iabs(pk * Interval(Rat(v[i])) - limit[i]);
      worst = Interval(std::max(worst.lo, e.lo), std::max(worst.hi, e.hi));
    }
    errs.push_back(worst);
    v = mat_vec(pd.xi_matrix, v);
    // p^k is multiplied by entries of size ~beta^k, so round relative to them.
    size_t vbits = 0;
    for (const Int &x : v) vbits = std::max(vbits, mpz_sizeinbase(x.get_mpz_t(), 2));
    pk = (pk * p).rounded(bits + 64 + long(vbits));
  }
  return errs;
}

} // namespace lipfrac
