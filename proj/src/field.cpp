#include "lipfrac/field.hpp"

#include <numeric>

namespace lipfrac {

namespace {

constexpr long kSpecBits = 200;

void fill_derived(AlgebraicNumberSpec &s) {
  const int d = static_cast<int>(s.beta_min_poly.size()) - 1;
  s.degree = d;
  s.norm_beta = (d % 2 == 0) ? s.beta_min_poly[0] : Int(-s.beta_min_poly[0]);
  // beta^d = -sum c_i beta^i; higher powers by shifting.
  s.reduction.clear();
  IntVec cur(d);
  for (int i = 0; i < d; ++i) cur[i] = -s.beta_min_poly[i];
  for (int e = d; e <= 2 * d - 2; ++e) {
    s.reduction.push_back(cur);
    IntVec next(d, 0);
    for (int i = 0; i + 1 < d; ++i) next[i + 1] = cur[i];
    Int top = cur[d - 1];
    for (int i = 0; i < d; ++i) next[i] -= top * s.beta_min_poly[i];
    cur = next;
  }
  Poly P = Poly::from_int(s.beta_min_poly).reversed(d);
  s.p_min_poly = P.primitive_int();
  s.p_interval = Interval(Rat(1) / s.beta_interval.hi, Rat(1) / s.beta_interval.lo);
}

} // namespace

std::string AlgebraicNumberSpec::relation_str() const {
  if (relation.empty()) return "beta: " + int_poly_str(beta_min_poly, "x") + " = 0";
  std::string s;
  for (long l = static_cast<long>(relation.size()); l >= 1; --l) {
    const Int &c = relation[l - 1];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (c != 1) s += c.get_str();
    s += "p";
    if (l > 1) s += "^" + std::to_string(l);
  }
  return s + " = 1";
}

Interval AlgebraicNumberSpec::beta_enclosure(long bits) const {
  Rat target = Rat(1) / Rat(ipow(2, bits));
  if (beta_interval.width() <= target) return beta_interval;
  return refine_root(Poly::from_int(beta_min_poly), beta_interval, bits);
}

SpecPtr spec_from_relation(const IntVec &xi, bool strict) {
  std::vector<long> ex;
  for (size_t l = 0; l < xi.size(); ++l) {
    if (xi[l] < 0) fail(ErrorCode::InvalidInput, "relation coefficients must be nonnegative");
    for (Int c = 0; c < xi[l]; ++c) ex.push_back(static_cast<long>(l + 1));
  }
  return measure_root(ex, strict);
}

SpecPtr measure_root(const std::vector<long> &exponents, bool strict) {
  if (exponents.empty()) fail(ErrorCode::EmptyInput, "no exponents");
  long n = 0, g = 0;
  for (long e : exponents) {
    if (e <= 0) fail(ErrorCode::InvalidInput, "exponents must be positive");
    n = std::max(n, e);
    g = std::gcd(g, e);
  }
  if (exponents.size() == 1)
    fail(ErrorCode::InvalidInput, "a single map gives p = 1, outside (0,1)");
  if (g > 1 && strict)
    fail(ErrorCode::GcdViolation, "gcd of exponents is " + std::to_string(g));

  auto s = std::make_shared<AlgebraicNumberSpec>();
  s->relation.assign(n, 0);
  for (long e : exponents) s->relation[e - 1] += 1;
  s->relation_primitive = g == 1;

  // Monic reversal x^n - sum xi_l x^(n-l); beta is its only positive root.
  IntVec rev(n + 1, 0);
  rev[n] = 1;
  Int maxxi = 0;
  for (long l = 1; l <= n; ++l) {
    rev[n - l] -= s->relation[l - 1];
    maxxi = std::max(maxxi, s->relation[l - 1]);
  }
  Poly R = Poly::from_int(rev);
  Interval iv(Rat(1), Rat(maxxi + 1));
  if (R.sign_at(iv.lo) >= 0 || R.sign_at(iv.hi) <= 0)
    fail(ErrorCode::VerificationFailed, "reversal does not bracket its positive root");
  iv = refine_root(R, iv, 64);
  s->beta_min_poly = minimal_factor_at(rev, iv);
  Poly M = Poly::from_int(s->beta_min_poly);
  s->beta_interval = refine_root(M, iv, kSpecBits);
  fill_derived(*s);
  return s;
}

SpecPtr spec_from_beta_poly(const IntVec &monic, const Interval &iv) {
  if (monic.empty() || monic.back() != 1)
    fail(ErrorCode::InvalidInput, "beta polynomial must be monic");
  Poly M = Poly::from_int(monic);
  if (iv.lo <= 1) fail(ErrorCode::InvalidInput, "beta interval must lie in (1, inf)");
  if (count_roots(M, iv.lo, iv.hi) != 1 || M.sign_at(iv.lo) == 0)
    fail(ErrorCode::InvalidInput, "interval does not isolate a root");
  auto s = std::make_shared<AlgebraicNumberSpec>();
  s->beta_min_poly = monic;
  Interval w = iv;
  if (M.sign_at(w.hi) == 0) {
    s->beta_interval = Interval(w.hi);
  } else {
    s->beta_interval = refine_root(M, w, kSpecBits);
  }
  fill_derived(*s);
  return s;
}

bool same_root(const IntVec &poly, const Interval &a, const Interval &b) {
  if (!a.overlaps(b)) return false;
  Rat lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  Poly P = Poly::from_int(poly);
  if (lo == hi) return P.sign_at(lo) == 0;
  int c = count_roots(P, lo, hi) + (P.sign_at(lo) == 0 ? 1 : 0);
  return c == 1;
}

bool same_spec(const SpecPtr &a, const SpecPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->beta_min_poly == b->beta_min_poly &&
         same_root(a->beta_min_poly, a->beta_interval, b->beta_interval);
}

FieldElem::FieldElem(SpecPtr spec, RatVec coords) : spec_(std::move(spec)), c_(std::move(coords)) {
  if (static_cast<int>(c_.size()) != spec_->degree)
    fail(ErrorCode::InvalidInput, "coordinate vector has wrong length");
}

FieldElem FieldElem::from_rat(const SpecPtr &s, const Rat &q) {
  RatVec c(s->degree, 0);
  c[0] = q;
  return FieldElem(s, c);
}

FieldElem FieldElem::beta(const SpecPtr &s) {
  RatVec c(s->degree, 0);
  if (s->degree == 1)
    c[0] = -s->beta_min_poly[0];
  else
    c[1] = 1;
  return FieldElem(s, c);
}

FieldElem FieldElem::p(const SpecPtr &s) {
  // beta * (beta^(d-1) + c_{d-1} beta^(d-2) + ... + c_1) = -c_0
  const int d = s->degree;
  RatVec c(d, 0);
  Rat c0 = s->beta_min_poly[0];
  for (int i = 0; i < d; ++i) c[i] = -Rat(s->beta_min_poly[i + 1]) / c0;
  return FieldElem(s, c);
}

FieldElem FieldElem::from_p_laurent(const SpecPtr &s, const std::map<long, Rat> &terms) {
  FieldElem acc = from_rat(s, 0);
  FieldElem pp = p(s), bb = beta(s);
  for (auto &[k, c] : terms) acc = acc + (k >= 0 ? pp.pow(k) : bb.pow(-k)) * c;
  return acc;
}

void FieldElem::check(const FieldElem &o) const {
  if (spec_ != o.spec_ && !same_spec(spec_, o.spec_))
    fail(ErrorCode::OwnerMismatch, "elements of different fields");
}

bool FieldElem::is_zero() const {
  for (auto &v : c_)
    if (v != 0) return false;
  return true;
}

bool FieldElem::is_integral() const {
  for (auto &v : c_)
    if (v.get_den() != 1) return false;
  return true;
}

IntVec FieldElem::int_coords() const {
  IntVec r;
  for (auto &v : c_) {
    if (v.get_den() != 1) fail(ErrorCode::NotMember, "element is not in Z[beta]");
    r.push_back(v.get_num());
  }
  return r;
}

FieldElem FieldElem::operator+(const FieldElem &o) const {
  check(o);
  RatVec r = c_;
  for (size_t i = 0; i < r.size(); ++i) r[i] += o.c_[i];
  return FieldElem(spec_, r);
}

FieldElem FieldElem::operator-(const FieldElem &o) const {
  check(o);
  RatVec r = c_;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= o.c_[i];
  return FieldElem(spec_, r);
}

FieldElem FieldElem::operator-() const {
  RatVec r = c_;
  for (auto &v : r) v = -v;
  return FieldElem(spec_, r);
}

FieldElem FieldElem::operator*(const Rat &s) const {
  RatVec r = c_;
  for (auto &v : r) v *= s;
  return FieldElem(spec_, r);
}

FieldElem FieldElem::operator*(const FieldElem &o) const {
  check(o);
  const int d = spec_->degree;
  RatVec full(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j) full[i + j] += c_[i] * o.c_[j];
  }
  RatVec r(full.begin(), full.begin() + d);
  for (int e = d; e <= 2 * d - 2; ++e) {
    if (full[e] == 0) continue;
    const IntVec &red = spec_->reduction[e - d];
    for (int i = 0; i < d; ++i) r[i] += full[e] * red[i];
  }
  return FieldElem(spec_, r);
}

RatMat FieldElem::mult_matrix() const {
  const int d = spec_->degree;
  RatMat m;
  FieldElem bj = from_rat(spec_, 1), b = beta(spec_);
  for (int j = 0; j < d; ++j) {
    m.push_back((bj * *this).c_);
    bj = bj * b;
  }
  return m;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) fail(ErrorCode::InvalidInput, "inverse of zero");
  RatVec e(spec_->degree, 0);
  e[0] = 1;
  try {
    return FieldElem(spec_, solve_left(mult_matrix(), e));
  } catch (const Error &) {
    fail(ErrorCode::VerificationFailed,
         "zero divisor found: beta polynomial " + int_poly_str(spec_->beta_min_poly, "x") +
             " is reducible");
  }
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem r = from_rat(spec_, 1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Interval FieldElem::enclosure(long bits) const {
  Interval b = spec_->beta_enclosure(bits);
  Interval r(Rat(0));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * b + Interval(*it);
  return r;
}

int FieldElem::sign() const {
  if (is_zero()) return 0;
  for (long bits = 64; bits <= 1 << 14; bits *= 2) {
    Interval iv = enclosure(bits);
    if (iv.positive()) return 1;
    if (iv.negative()) return -1;
  }
  fail(ErrorCode::VerificationFailed, "sign of a nonzero element did not resolve");
}

double FieldElem::approx() const { return enclosure(80).mid().get_d(); }

Poly FieldElem::minimal_polynomial() const {
  Poly c = charpoly(mult_matrix());
  return squarefree_part(c);
}

std::string FieldElem::str() const {
  std::string s;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    const Rat &v = c_[i];
    if (v == 0) continue;
    Rat mag = abs(v);
    if (s.empty())
      s += v < 0 ? "-" : "";
    else
      s += v < 0 ? " - " : " + ";
    if (i == 0 || mag != 1) s += to_string(mag);
    if (i >= 1) s += (mag != 1 ? "*" : "") + std::string("β");
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

long membership_bound(const FieldElem &x) {
  const SpecPtr &s = x.spec();
  Int den = 1;
  for (auto &v : x.coords()) den = lcm(den, v.get_den());
  if (den == 1) return 0;
  // Spec formula: d * max_q ceil(v_q(den) / max(1, v_q(N(beta)))).
  long spec_bound = 0;
  for (auto &[q, e] : factorize(den)) {
    long vn = 0;
    Int n = abs(s->norm_beta);
    while (n != 0 && n % q == 0) {
      n /= q;
      ++vn;
    }
    long t = (static_cast<long>(e) + std::max(1L, vn) - 1) / std::max(1L, vn);
    spec_bound = std::max(spec_bound, t);
  }
  spec_bound *= s->degree;
  long chain = static_cast<long>(s->degree) * bit_length(den);
  return std::max(spec_bound, chain);
}

std::optional<ZpForm> zp_canonical(const FieldElem &x) {
  const SpecPtr &s = x.spec();
  Int den = 1;
  for (auto &v : x.coords()) den = lcm(den, v.get_den());
  for (auto &[q, e] : factorize(den)) {
    (void)e;
    if (s->norm_beta % q != 0) return std::nullopt;
  }
  long bound = membership_bound(x);
  FieldElem cur = x, b = FieldElem::beta(s);
  for (long k = 0; k <= bound; ++k) {
    if (cur.is_integral()) return ZpForm{k, cur.int_coords()};
    cur = cur * b;
  }
  return std::nullopt;
}

bool member_of_Zp(const FieldElem &x) { return zp_canonical(x).has_value(); }

std::string p_laurent_str(const std::map<long, Int> &terms) {
  std::string s;
  for (auto &[k, c] : terms) {
    if (c == 0) continue;
    Int mag = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    if (k == 0 || mag != 1) s += mag.get_str();
    if (k != 0) s += "p";
    if (k != 0 && k != 1) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

} // namespace lipfrac
