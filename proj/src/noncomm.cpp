#include "lipfrac/noncomm.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "lipfrac/decide.hpp"
#include "lipfrac/errors.hpp"

namespace lipfrac {

namespace {

void add_primes(const Rat &x, std::set<Int> &out) {
  for (auto &[q, e] : factorize(x.get_num())) out.insert(q);
  for (auto &[q, e] : factorize(x.get_den())) out.insert(q);
}

// Exponent vector of x over a fixed prime list; nullopt when x has another prime.
std::optional<IntVec> exponents_over(const Rat &x, const std::vector<Int> &primes) {
  IntVec e(primes.size(), 0);
  Int num = x.get_num(), den = x.get_den();
  for (size_t q = 0; q < primes.size(); ++q) {
    while (num % primes[q] == 0) {
      num /= primes[q];
      e[q] += 1;
    }
    while (den % primes[q] == 0) {
      den /= primes[q];
      e[q] -= 1;
    }
  }
  if (abs(num) != 1 || den != 1) return std::nullopt;
  return e;
}

std::vector<Int> prime_list(const std::vector<Rat> &xs) {
  std::set<Int> ps;
  for (auto &x : xs) add_primes(x, ps);
  return {ps.begin(), ps.end()};
}

std::vector<Rat> distinct(std::vector<Rat> xs) {
  for (auto &x : xs) x.canonicalize();
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

void check_ratios(const std::vector<Rat> &xs) {
  if (xs.empty()) fail(ErrorCode::EmptyInput, "no ratios");
  for (auto &x : xs)
    if (!(x > 0 && x < 1)) fail(ErrorCode::InvalidInput, "ratios must lie in (0,1)");
}

// x in Z+[gens] with a representation of degree <= D using at most three monomials.
bool bounded_member(const Rat &x, const std::vector<Rat> &gens, long D) {
  std::set<Rat> monos = {Rat(1)};
  std::set<Rat> frontier = {Rat(1)};
  for (long d = 1; d <= D; ++d) {
    std::set<Rat> next;
    for (auto &m : frontier)
      for (auto &g : gens) {
        Rat v = m * g;
        if (!monos.count(v)) next.insert(v);
      }
    monos.insert(next.begin(), next.end());
    frontier = std::move(next);
    if (monos.size() > 4000) break;
  }
  std::vector<Rat> vals(monos.rbegin(), monos.rend());
  auto integral = [](const Rat &q) { return q.get_den() == 1 && q > 0; };
  for (auto &v : vals)
    if (integral(x / v)) return true;
  long work = 0;
  const long cap = 200000;
  // Two or three terms with the leading coefficients kept small.
  for (size_t i = 0; i < vals.size(); ++i)
    for (long c1 = 1; c1 <= 64 && c1 * vals[i] < x; ++c1) {
      Rat rest = x - c1 * vals[i];
      for (size_t j = i + 1; j < vals.size(); ++j) {
        if (++work > cap) return false;
        if (integral(rest / vals[j])) return true;
        for (long c2 = 1; c2 <= 16 && c2 * vals[j] < rest; ++c2) {
          Rat r2 = rest - c2 * vals[j];
          for (size_t k = j + 1; k < vals.size(); ++k)
            if (++work > cap) return false;
            else if (integral(r2 / vals[k])) return true;
        }
      }
    }
  return false;
}

Int radical(const Int &n) {
  Int r = 1;
  for (auto &[q, e] : factorize(n)) r *= q;
  return r;
}

std::string rat_list(const std::vector<Rat> &xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
  return s;
}

} // namespace

RatioSemigroup::RatioSemigroup(std::vector<Rat> gens) : generators(distinct(std::move(gens))) {
  check_ratios(generators);
  primes = prime_list(generators);
  for (auto &g : generators) exponents.push_back(*exponents_over(g, primes));
}

bool RatioSemigroup::supports(const Rat &x) const { return exponents_over(x, primes).has_value(); }

IntVec RatioSemigroup::exponent_vector(const Rat &x) const {
  auto e = exponents_over(x, primes);
  if (!e) fail(ErrorCode::InvalidInput, to_string(x) + " has a prime outside the semigroup support");
  return *e;
}

std::optional<RatVec> nonneg_solution(const RatMat &A, const RatVec &b) {
  const size_t m = A.size();
  const size_t n = m ? A[0].size() : 0;
  if (b.size() != m) fail(ErrorCode::InvalidInput, "dimension mismatch in cone feasibility");
  // Tableau [A | I | b] with rows flipped so that b >= 0; artificial basis.
  const size_t cols = n + m;
  std::vector<RatVec> T(m, RatVec(cols + 1, 0));
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) {
    int s = b[i] < 0 ? -1 : 1;
    for (size_t j = 0; j < n; ++j) T[i][j] = s * A[i][j];
    T[i][n + i] = 1;
    T[i][cols] = s * b[i];
    basis[i] = n + i;
  }
  RatVec cost(cols + 1, 0); // reduced costs of sum of artificials
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= T[i][j];
  for (;;) {
    size_t enter = cols;
    for (size_t j = 0; j < cols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    size_t leave = m;
    Rat best;
    for (size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][cols] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break; // unbounded direction cannot occur in phase one
    Rat piv = T[leave][enter];
    for (auto &v : T[leave]) v /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
    }
    Rat f = cost[enter];
    for (size_t j = 0; j <= cols; ++j) cost[j] -= f * T[leave][j];
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt; // -(sum of artificials) at the optimum
  RatVec x(n, 0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][cols];
  // Independent exact check.
  for (size_t i = 0; i < m; ++i) {
    Rat s = 0;
    for (size_t j = 0; j < n; ++j) s += A[i][j] * x[j];
    if (s != b[i]) fail(ErrorCode::VerificationFailed, "cone solution does not satisfy the system");
  }
  return x;
}

std::optional<long> power_in_semigroup(const Rat &x, const RatioSemigroup &G) {
  auto e = exponents_over(x, G.primes);
  if (!e) return std::nullopt;
  RatMat A(G.primes.size(), RatVec(G.generators.size()));
  RatVec b(G.primes.size());
  for (size_t q = 0; q < G.primes.size(); ++q) {
    b[q] = Rat((*e)[q]);
    for (size_t j = 0; j < G.generators.size(); ++j) A[q][j] = Rat(G.exponents[j][q]);
  }
  auto lam = nonneg_solution(A, b);
  if (!lam) return std::nullopt;
  Int u = 1;
  for (auto &l : *lam) u = lcm(u, l.get_den());
  // x^u = prod g_j^(u lambda_j) with nonnegative integer exponents.
  Rat lhs = rpow(x, u.get_si()), rhs = 1;
  for (size_t j = 0; j < lam->size(); ++j) rhs *= rpow(G.generators[j], Rat(u * (*lam)[j]).get_num().get_si());
  if (lhs != rhs) fail(ErrorCode::VerificationFailed, "semigroup power check failed");
  return u.get_si();
}

SgpComparison sgp_equivalent(const std::vector<Rat> &S, const std::vector<Rat> &T) {
  RatioSemigroup GS(S), GT(T);
  SgpComparison out;
  out.u = out.v = 1;
  auto side = [&](const RatioSemigroup &from, const RatioSemigroup &into, long &power) {
    for (auto &g : from.generators) {
      auto u = power_in_semigroup(g, into);
      if (!u) {
        out.obstruction = to_string(g);
        return false;
      }
      power = lcm(Int(power), Int(*u)).get_si();
    }
    return true;
  };
  out.equivalent = side(GS, GT, out.u) && side(GT, GS, out.v);
  if (!out.equivalent) out.u = out.v = 0;
  return out;
}

std::optional<Rat> exact_dimension(const std::vector<Rat> &ratios) {
  check_ratios(ratios);
  auto ds = distinct(ratios);
  if (ds.size() == 1) {
    // N r^s = 1: b log N = a log(1/r) prime by prime.
    Int N = static_cast<long>(ratios.size());
    if (N == 1) return Rat(0);
    Rat inv = 1 / ds[0];
    auto primes = prime_list({Rat(N), inv});
    auto eN = *exponents_over(Rat(N), primes), eR = *exponents_over(inv, primes);
    std::optional<Rat> s;
    for (size_t q = 0; q < primes.size(); ++q) {
      if (eR[q] == 0) {
        if (eN[q] != 0) return std::nullopt;
        continue;
      }
      Rat t(eN[q], eR[q]);
      t.canonicalize();
      if (s && *s != t) return std::nullopt;
      s = t;
    }
    return s;
  }
  Interval enc = dimension_enclosure(ratios, Rat(1, Int(1) << 60));
  for (long b = 1; b <= 64; ++b) {
    Rat s(floor_rat(enc.mid() * b + Rat(1, 2)), b);
    s.canonicalize();
    if (s < enc.lo || s > enc.hi) continue;
    Rat sum = 0;
    bool ok = true;
    for (auto &r : ratios) {
      Rat v;
      if (!rational_root(rpow(r, s.get_num().get_si()), s.get_den().get_ui(), &v)) {
        ok = false;
        break;
      }
      sum += v;
    }
    if (ok && sum == 1) return s;
  }
  return std::nullopt;
}

const char *zplus_name(ZPlusOutcome o) {
  return o == ZPlusOutcome::EqualUpToBound ? "EqualUpToBound" : "CounterexampleFound";
}

ZPlusComparison zplus_equal(const std::vector<Rat> &S, const std::vector<Rat> &T, long degree_bound) {
  check_ratios(S);
  check_ratios(T);
  ZPlusComparison out;
  out.bound = degree_bound;
  std::optional<RatioRoot> rs, rt;
  try {
    rs = ratio_root(S);
    rt = ratio_root(T);
  } catch (const Error &) {
    rs.reset();
    rt.reset();
  }
  if (rs && rt) {
    for (auto *root : {&*rs, &*rt}) {
      long g = 0;
      for (long l : root->exponents) g = std::gcd(g, l);
      for (long &l : root->exponents) l /= g;
      root->r = rpow(root->r, g);
    }
    // Commensurable sub-case: Z+[S] is the positive part of Z[p_S], so compare rings.
    IFS aS = abstract_ifs(rs->r, rs->exponents), aT = abstract_ifs(rt->r, rt->exponents);
    if (!dimensions_equal(aS, aT).equal) fail(ErrorCode::InvalidInput, "dimensions differ");
    auto same = same_ring(aS.spec, aT.spec);
    if (!same) fail(ErrorCode::FieldUnsupported, "no common field found for p_S and p_T");
    out.route = "commensurable";
    out.exact = true;
    if (*same) {
      out.common = "positive part of " + ring_description(aS.spec);
      return out;
    }
    out.outcome = ZPlusOutcome::CounterexampleFound;
    auto pS = embed(FieldElem::p(aS.spec), aT.spec);
    bool s_in_t = pS && member_of_Zp(*pS);
    out.side = s_in_t ? "T" : "S";
    const SpecPtr &sp = s_in_t ? aT.spec : aS.spec;
    out.counterexample = "p_" + out.side + " (" + sp->relation_str() + ") is not in " +
                         ring_description(s_in_t ? aS.spec : aT.spec);
    return out;
  }
  auto sS = exact_dimension(S), sT = exact_dimension(T);
  if (!sS || !sT) fail(ErrorCode::FieldUnsupported, "r_i^s are not all rational and the ratios are not commensurable");
  if (*sS != *sT) fail(ErrorCode::InvalidInput, "dimensions differ");
  const Rat s = *sS;
  auto values = [&](const std::vector<Rat> &R) {
    std::vector<Rat> v;
    for (auto &r : R) {
      Rat x;
      if (!rational_root(rpow(r, s.get_num().get_si()), s.get_den().get_ui(), &x))
        fail(ErrorCode::FieldUnsupported, "r^s is irrational");
      v.push_back(x);
    }
    return distinct(v);
  };
  auto A = values(S), B = values(T);
  out.route = "rational";
  // Z+[A] = Z+[1/q] exactly once 1/q is found in it, q the radical of the denominators.
  auto reduce = [&](const std::vector<Rat> &V) -> std::optional<Int> {
    Int den = 1;
    for (auto &v : V) den = lcm(den, v.get_den());
    Int q = radical(den);
    if (bounded_member(Rat(1, q), V, degree_bound)) return q;
    return std::nullopt;
  };
  auto qA = reduce(A), qB = reduce(B);
  if (qA && qB) {
    out.exact = true;
    if (*qA == *qB) {
      out.common = "Z+[" + to_string(Rat(1, *qA)) + "]";
      return out;
    }
    // One q has a prime the other lacks; 1/q of that side is outside the other ring.
    bool a_extra = radical(lcm(*qA, *qB)) != *qB;
    out.outcome = ZPlusOutcome::CounterexampleFound;
    out.side = a_extra ? "S" : "T";
    out.counterexample = to_string(Rat(1, a_extra ? *qA : *qB));
    return out;
  }
  for (auto &b : B)
    if (!bounded_member(b, A, degree_bound)) {
      out.outcome = ZPlusOutcome::CounterexampleFound;
      out.side = "T";
      out.counterexample = to_string(b) + " (not reached from {" + rat_list(A) + "} up to degree " +
                           std::to_string(degree_bound) + ")";
      return out;
    }
  for (auto &a : A)
    if (!bounded_member(a, B, degree_bound)) {
      out.outcome = ZPlusOutcome::CounterexampleFound;
      out.side = "S";
      out.counterexample = to_string(a) + " (not reached from {" + rat_list(B) + "} up to degree " +
                           std::to_string(degree_bound) + ")";
      return out;
    }
  out.common = "Z+[" + rat_list(A) + "]";
  return out;
}

std::vector<size_t> sub_ifs(const std::vector<Rat> &S, const std::optional<RatioSemigroup> &G) {
  check_ratios(S);
  std::vector<size_t> kept;
  if (!G) {
    for (size_t i = 0; i < S.size(); ++i) kept.push_back(i);
    return kept;
  }
  std::vector<Rat> all = S;
  all.insert(all.end(), G->generators.begin(), G->generators.end());
  auto primes = prime_list(all);
  // r_i prod r_j^k_j = prod g_l^h_l. With k'_i = k_i + 1 the system is homogeneous, so a
  // rational solution scales to an integer one: sum_j k_j e_j - sum_l h_l g_l = -e_i.
  const size_t n = S.size(), m = G->generators.size();
  std::vector<IntVec> eS, eG;
  for (auto &r : S) eS.push_back(*exponents_over(r, primes));
  for (auto &g : G->generators) eG.push_back(*exponents_over(g, primes));
  RatMat A(primes.size(), RatVec(n + m));
  for (size_t q = 0; q < primes.size(); ++q) {
    for (size_t j = 0; j < n; ++j) A[q][j] = Rat(eS[j][q]);
    for (size_t l = 0; l < m; ++l) A[q][n + l] = Rat(-eG[l][q]);
  }
  for (size_t i = 0; i < n; ++i) {
    RatVec b(primes.size());
    for (size_t q = 0; q < primes.size(); ++q) b[q] = Rat(-eS[i][q]);
    if (nonneg_solution(A, b)) kept.push_back(i);
  }
  return kept;
}

SubDimension subdimension(const std::vector<Rat> &S, const std::optional<RatioSemigroup> &G) {
  SubDimension out;
  out.kept = sub_ifs(S, G);
  if (out.kept.empty()) fail(ErrorCode::EmptySubsystem, "no map of S survives the semigroup");
  std::vector<Rat> sub;
  for (size_t i : out.kept) sub.push_back(S[i]);
  out.exact = exact_dimension(sub);
  if (out.exact)
    out.enclosure = Interval(*out.exact, *out.exact);
  else
    out.enclosure = dimension_enclosure(sub, Rat(1, Int(1) << 60));
  return out;
}

std::vector<std::vector<Rat>> infinite_family(const std::vector<Rat> &S, size_t index, const std::vector<long> &mu,
                                              long n) {
  check_ratios(S);
  if (index >= S.size()) fail(ErrorCode::SubstitutionInvalid, "map index out of range");
  if (mu.empty() || n < 1) fail(ErrorCode::SubstitutionInvalid, "empty substitution");
  for (long m : mu)
    if (m < 1) fail(ErrorCode::SubstitutionInvalid, "replacement exponents must be positive");
  const Rat r = S[index];
  // A copy of ratio rho becomes copies rho r^(mu_j - 1); this keeps the dimension iff
  // sum_j r^((mu_j - 1) s) = 1 at s = dim S.
  auto s = exact_dimension(S);
  if (!s) fail(ErrorCode::SubstitutionInvalid, "dimension is not closed-form; the substitution cannot be verified exactly");
  Rat total = 0;
  for (long m : mu) {
    Rat x;
    Rat base = rpow(r, (m - 1) * s->get_num().get_si());
    if (!rational_root(base, s->get_den().get_ui(), &x))
      fail(ErrorCode::SubstitutionInvalid, "r^s is irrational; the substitution cannot be verified exactly");
    total += x;
  }
  if (total != 1) fail(ErrorCode::SubstitutionInvalid, "replacement changes the dimension equation");
  bool identity = mu.size() == 1 && mu[0] == 1;
  if (!identity) {
    // r^lambda_1 + ... + r^lambda_m = 1 has a solution exactly when r = 1/q.
    if (r.get_num() != 1) fail(ErrorCode::SubstitutionInvalid, "no exponents with sum r^lambda = 1");
    if (sub_ifs(S, RatioSemigroup({r})).size() == S.size())
      fail(ErrorCode::SubstitutionInvalid, "every map survives the semigroup generated by r");
  }
  std::vector<std::vector<Rat>> family = {S};
  std::vector<size_t> newest = {index};
  for (long k = 2; k <= n; ++k) {
    const auto &prev = family.back();
    std::vector<Rat> next;
    std::vector<size_t> fresh;
    for (size_t i = 0; i < prev.size(); ++i) {
      if (std::find(newest.begin(), newest.end(), i) == newest.end()) {
        next.push_back(prev[i]);
        continue;
      }
      for (long m : mu) {
        fresh.push_back(next.size());
        next.push_back(prev[i] * rpow(r, m - 1));
      }
    }
    family.push_back(next);
    newest = fresh;
  }
  return family;
}

std::vector<Rat> ratios_of(const IFS &ifs) {
  std::vector<Rat> out;
  if (ifs.kind == IfsKind::Geometric)
    for (auto &m : ifs.maps) out.push_back(m.ratio);
  else
    for (long l : ifs.lambdas) out.push_back(rpow(ifs.r, l));
  return out;
}

} // namespace lipfrac
