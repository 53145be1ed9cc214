#include "lipfrac/positivity.hpp"

#include "lipfrac/perron.hpp"

namespace lipfrac {

FieldElem eval_p_poly(const SpecPtr &spec, const IntVec &c, long shift) {
  FieldElem p = FieldElem::p(spec);
  FieldElem acc = FieldElem::from_rat(spec, 0), pw = p.pow(shift);
  for (auto &v : c) {
    if (v != 0) acc = acc + pw * Rat(v);
    pw = pw * p;
  }
  return acc;
}

IntVec positive_representation(const FieldElem &a) {
  const SpecPtr &spec = a.spec();
  auto form = zp_canonical(a);
  if (!form) fail(ErrorCode::NotMember, a.str() + " is not in Z[p]");
  if (!a.positive()) fail(ErrorCode::NotPositive, a.str() + " is not positive");
  PerronData pd = perron_matrix(spec);
  const int d = spec->degree;
  const size_t n = pd.xi_matrix.size();
  // a = beta^{-k} sum y_j beta^j = p^{k-(d-1)} sum_i y_{d-1-i} p^i
  long l = form->k - (d - 1);
  IntVec v(n, 0);
  for (int j = 0; j < d; ++j) v[d - 1 - j] = form->y[j];
  auto nonneg = [](const IntVec &x) {
    for (auto &t : x)
      if (t < 0) return false;
    return true;
  };
  long steps = 0;
  while (l < 0 || !nonneg(v)) {
    v = mat_vec(pd.xi_matrix, v);
    ++l;
    if (++steps > 1000000) fail(ErrorCode::VerificationFailed, "Xi-iteration did not become nonnegative");
  }
  IntVec c(l, 0);
  c.insert(c.end(), v.begin(), v.end());
  while (c.size() > 1 && c.back() == 0) c.pop_back();
  if (eval_p_poly(spec, c) != a) fail(ErrorCode::VerificationFailed, "positive representation mismatch");
  return c;
}

std::vector<FieldElem> integer_combination(const std::vector<FieldElem> &gens, const FieldElem &target) {
  const SpecPtr &spec = target.spec();
  const int d = spec->degree;
  auto tf = zp_canonical(target);
  if (!tf) fail(ErrorCode::NotMember, "target not in Z[p]");
  std::vector<long> ks;
  IntMat rows;
  FieldElem b = FieldElem::beta(spec);
  for (auto &g : gens) {
    auto f = zp_canonical(g);
    if (!f) fail(ErrorCode::NotMember, "generator not in Z[p]");
    ks.push_back(f->k);
    FieldElem e(spec, RatVec(f->y.begin(), f->y.end()));
    for (int j = 0; j < d; ++j) {
      rows.push_back(e.int_coords());
      e = e * b;
    }
  }
  IntMat U;
  IntMat H = hnf(rows, &U);
  FieldElem v(spec, RatVec(tf->y.begin(), tf->y.end()));
  // beta^t * y_target lies in the unsaturated module for some t.
  for (long t = 0; t < 100000; ++t) {
    IntVec w = v.int_coords();
    if (lattice_contains(H, w)) {
      // Solve x H = w (H upper echelon with pivots in the leading positions).
      IntVec x(H.size(), 0);
      IntVec rem = w;
      size_t col = 0;
      for (size_t i = 0; i < H.size(); ++i) {
        while (H[i][col] == 0) ++col;
        x[i] = rem[col] / H[i][col];
        for (size_t j = col; j < rem.size(); ++j) rem[j] -= x[i] * H[i][j];
      }
      IntVec coef(rows.size(), 0);
      for (size_t i = 0; i < H.size(); ++i)
        for (size_t j = 0; j < rows.size(); ++j) coef[j] += x[i] * U[i][j];
      std::vector<FieldElem> out;
      FieldElem p = FieldElem::p(spec);
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        FieldElem acc = FieldElem::from_rat(spec, 0), bj = FieldElem::from_rat(spec, 1);
        for (int j = 0; j < d; ++j) {
          acc = acc + bj * Rat(coef[gi * d + j]);
          bj = bj * b;
        }
        // gens[gi] = beta^{-k_i} y_i, target = beta^{-k_t} y_t, and beta^t y_t = sum coef * y_i beta^j
        out.push_back(acc * b.pow(ks[gi]) * p.pow(t + tf->k));
      }
      FieldElem chk = FieldElem::from_rat(spec, 0);
      for (size_t gi = 0; gi < gens.size(); ++gi) chk = chk + gens[gi] * out[gi];
      if (chk != target) fail(ErrorCode::VerificationFailed, "integer combination mismatch");
      return out;
    }
    v = v * b;
  }
  fail(ErrorCode::NotInIdeal, "target is not in the ideal");
}

static void check_inputs(const std::vector<FieldElem> &gens, const FieldElem &target) {
  if (gens.empty()) fail(ErrorCode::EmptyInput, "no generators");
  if (!target.positive()) fail(ErrorCode::NotPositive, "target must be positive");
  for (auto &g : gens)
    if (!g.positive()) fail(ErrorCode::NotPositive, "generators must be positive");
  IdealLattice I = ideal_hnf(gens, target.spec());
  if (!ideal_contains(I, target)) fail(ErrorCode::NotInIdeal, target.str() + " is not in the ideal");
}

static std::vector<FieldElem> inductive(std::vector<FieldElem> gens, FieldElem target) {
  const SpecPtr &spec = target.spec();
  const size_t m = gens.size();
  if (m == 1) return {target / gens[0]};
  auto bprime = integer_combination(gens, target);
  size_t j = 0;
  while (j < m && !bprime[j].positive()) ++j;
  if (j == m) fail(ErrorCode::VerificationFailed, "no positive coefficient in a positive combination");
  std::vector<FieldElem> rest;
  for (size_t i = 0; i < m; ++i)
    if (i != j) rest.push_back(gens[i]);
  long l = find_unipotent_level(ideal_hnf(rest, spec));
  FieldElem pl = FieldElem::p(spec).pow(l), pk = pl;
  FieldElem bj, remaining;
  for (long k = 1;; ++k) {
    bj = bprime[j] * pk;
    remaining = target - gens[j] * bj;
    if (remaining.positive()) break;
    pk = pk * pl;
    if (k > 100000) fail(ErrorCode::VerificationFailed, "repair exponent search did not terminate");
  }
  auto sub = inductive(rest, remaining);
  std::vector<FieldElem> out;
  size_t t = 0;
  for (size_t i = 0; i < m; ++i) out.push_back(i == j ? bj : sub[t++]);
  return out;
}

static void verify(const std::vector<FieldElem> &gens, const FieldElem &target,
                   const std::vector<FieldElem> &b) {
  FieldElem acc = FieldElem::from_rat(target.spec(), 0);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (!b[i].positive() || !member_of_Zp(b[i]))
      fail(ErrorCode::VerificationFailed, "coefficient is not a positive element of Z[p]");
    acc = acc + gens[i] * b[i];
  }
  if (acc != target) fail(ErrorCode::VerificationFailed, "positive combination mismatch");
}

std::vector<FieldElem> positive_combination_inductive(const std::vector<FieldElem> &gens,
                                                      const FieldElem &target) {
  check_inputs(gens, target);
  auto b = inductive(gens, target);
  verify(gens, target, b);
  return b;
}

std::vector<FieldElem> positive_combination(const std::vector<FieldElem> &gens, const FieldElem &target) {
  check_inputs(gens, target);
  const SpecPtr &spec = target.spec();
  const size_t m = gens.size();
  if (m <= 3) {
    // Small multiples c_i p^e_i first; they give the short answers found by hand.
    std::vector<FieldElem> pw;
    for (int e = 0; e <= 3; ++e) pw.push_back(FieldElem::p(spec).pow(e));
    std::vector<int> c(m, 1), e(m, 0);
    for (;;) {
      FieldElem acc = FieldElem::from_rat(spec, 0);
      for (size_t i = 0; i < m; ++i) acc = acc + gens[i] * pw[e[i]] * Rat(c[i]);
      if (acc == target) {
        std::vector<FieldElem> b;
        for (size_t i = 0; i < m; ++i) b.push_back(pw[e[i]] * Rat(c[i]));
        verify(gens, target, b);
        return b;
      }
      size_t k = 0;
      for (; k < m; ++k) {
        if (++c[k] <= 4) break;
        c[k] = 1;
        if (++e[k] <= 3) break;
        e[k] = 0;
      }
      if (k == m) break;
    }
  }
  auto b = inductive(gens, target);
  verify(gens, target, b);
  return b;
}

} // namespace lipfrac
