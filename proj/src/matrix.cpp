#include "lipfrac/matrix.hpp"

namespace lipfrac {

IntMat identity_int(size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat identity_rat(size_t n) {
  RatMat m(n, RatVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat to_rat(const IntMat &a) {
  RatMat r;
  for (auto &row : a) r.emplace_back(row.begin(), row.end());
  return r;
}

IntMat mul(const IntMat &a, const IntMat &b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat r(n, IntVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

RatMat mul(const RatMat &a, const RatMat &b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat r(n, RatVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t)
      if (a[i][t] != 0)
        for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
  return r;
}

RatVec row_times(const RatVec &x, const RatMat &m) {
  RatVec r(m.empty() ? 0 : m[0].size(), 0);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0)
      for (size_t j = 0; j < r.size(); ++j) r[j] += x[i] * m[i][j];
  return r;
}

IntVec row_times(const IntVec &x, const IntMat &m) {
  IntVec r(m.empty() ? 0 : m[0].size(), 0);
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0)
      for (size_t j = 0; j < r.size(); ++j) r[j] += x[i] * m[i][j];
  return r;
}

IntMat hnf(const IntMat &a0, IntMat *u) {
  IntMat a = a0;
  const size_t m = a.size(), n = m ? a[0].size() : 0;
  IntMat U = identity_int(m);
  size_t r = 0;
  auto combine = [&](size_t i, size_t k, const Int &p, const Int &q, const Int &s, const Int &t) {
    // (row_i, row_k) <- (p row_i + q row_k, s row_i + t row_k), det = 1
    for (size_t j = 0; j < n; ++j) {
      Int x = a[i][j], y = a[k][j];
      a[i][j] = p * x + q * y;
      a[k][j] = s * x + t * y;
    }
    for (size_t j = 0; j < m; ++j) {
      Int x = U[i][j], y = U[k][j];
      U[i][j] = p * x + q * y;
      U[k][j] = s * x + t * y;
    }
  };
  for (size_t col = 0; col < n && r < m; ++col) {
    for (size_t k = r + 1; k < m; ++k) {
      if (a[k][col] == 0) continue;
      Int x = a[r][col], y = a[k][col], g, p, q;
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      combine(r, k, p, q, -y / g, x / g);
    }
    if (a[r][col] == 0) continue;
    if (a[r][col] < 0) {
      for (auto &v : a[r]) v = -v;
      for (auto &v : U[r]) v = -v;
    }
    const Int piv = a[r][col];
    for (size_t i = 0; i < r; ++i) {
      Int f = floor_div(a[i][col], piv);
      if (f == 0) continue;
      for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
      for (size_t j = 0; j < m; ++j) U[i][j] -= f * U[r][j];
    }
    ++r;
  }
  if (u) *u = U;
  a.resize(r);
  return a;
}

IntMat integer_kernel(const IntMat &a) {
  IntMat U;
  IntMat h = hnf(a, &U);
  IntMat k(U.begin() + static_cast<long>(h.size()), U.end());
  return k;
}

static Int common_den(const RatMat &a) {
  Int d = 1;
  for (auto &row : a)
    for (auto &v : row) d = lcm(d, v.get_den());
  return d;
}

static IntMat scale_to_int(const RatMat &a, const Int &d) {
  IntMat r;
  for (auto &row : a) {
    IntVec v;
    for (auto &x : row) {
      Rat s = x * Rat(d);
      v.push_back(s.get_num());
    }
    r.push_back(v);
  }
  return r;
}

RatMat hnf_rat(const RatMat &a) {
  Int d = common_den(a);
  IntMat h = hnf(scale_to_int(a, d));
  RatMat r = to_rat(h);
  for (auto &row : r)
    for (auto &v : row) v /= Rat(d);
  return r;
}

RatMat lattice_intersection(const RatMat &a, const RatMat &b) {
  Int d = lcm(common_den(a), common_den(b));
  IntMat A = scale_to_int(a, d), B = scale_to_int(b, d);
  IntMat stacked = A;
  for (auto row : B) {
    for (auto &v : row) v = -v;
    stacked.push_back(row);
  }
  IntMat ker = integer_kernel(stacked);
  IntMat rows;
  for (auto &kv : ker) {
    IntVec left(kv.begin(), kv.begin() + static_cast<long>(A.size()));
    rows.push_back(row_times(left, A));
  }
  IntMat h = hnf(rows);
  RatMat r = to_rat(h);
  for (auto &row : r)
    for (auto &v : row) v /= Rat(d);
  return r;
}

RatVec solve_left(const RatMat &m, const RatVec &b) {
  // x M = b  <=>  M^T x^T = b^T
  const size_t n = m.size();
  RatMat a(n, RatVec(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = m[j][i];
    a[i][n] = b[i];
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) fail(ErrorCode::SingularSystem, "singular linear system");
    std::swap(a[p], a[c]);
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  RatVec x(n);
  for (size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

RatMat inverse(const RatMat &m) {
  const size_t n = m.size();
  RatMat a = m, inv = identity_rat(n);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) fail(ErrorCode::SingularSystem, "singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rat piv = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Rat determinant(RatMat a) {
  const size_t n = a.size();
  Rat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rat f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

Poly charpoly(const RatMat &m) {
  // Faddeev-LeVerrier: det(xI - M).
  const size_t n = m.size();
  RatVec c(n + 1);
  c[n] = 1;
  RatMat mk(n, RatVec(n, 0)), id = identity_rat(n);
  for (size_t k = 1; k <= n; ++k) {
    RatMat t = mk;
    for (size_t i = 0; i < n; ++i) t[i][i] += c[n - k + 1];
    mk = mul(m, t);
    Rat tr = 0;
    for (size_t i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  return Poly(c);
}

} // namespace lipfrac
