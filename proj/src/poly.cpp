#include "lipfrac/poly.hpp"

#include <Eigen/Eigenvalues>

#include <complex>
#include <functional>

namespace lipfrac {

Poly::Poly(RatVec coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::from_int(const IntVec &c) {
  RatVec r(c.begin(), c.end());
  return Poly(r);
}

Poly Poly::monomial(const Rat &c, int deg) {
  RatVec r(deg + 1);
  r[deg] = c;
  return Poly(r);
}

Poly Poly::x_minus(const Rat &a) { return Poly(RatVec{-a, Rat(1)}); }

Rat Poly::eval(const Rat &x) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Interval Poly::eval(const Interval &x) const {
  Interval r(Rat(0));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Interval(*it);
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  RatVec r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(r);
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / lead());
}

Poly Poly::reversed(int n) const {
  RatVec r(n + 1);
  for (int i = 0; i <= degree(); ++i) r[n - i] = c_[i];
  return Poly(r);
}

IntVec Poly::primitive_int() const {
  if (is_zero()) return {};
  Int den = 1;
  for (auto &q : c_) den = lcm(den, q.get_den());
  IntVec r;
  Int g = 0;
  for (auto &q : c_) {
    Int v = q.get_num() * (den / q.get_den());
    r.push_back(v);
    g = lipfrac::gcd(g, v);
  }
  if (r.back() < 0) g = -g;
  for (auto &v : r) v /= g;
  return r;
}

Poly operator+(const Poly &a, const Poly &b) {
  RatVec r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
  return Poly(r);
}

Poly operator-(const Poly &a, const Poly &b) {
  RatVec r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
  return Poly(r);
}

Poly operator*(const Poly &a, const Poly &b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  RatVec r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Poly(r);
}

Poly operator*(const Poly &a, const Rat &s) {
  RatVec r = a.c_;
  for (auto &v : r) v *= s;
  return Poly(r);
}

void Poly::divmod(const Poly &a, const Poly &b, Poly &q, Poly &r) {
  if (b.is_zero()) fail(ErrorCode::InvalidInput, "polynomial division by zero");
  RatVec rem = a.c_;
  int db = b.degree();
  RatVec quo(std::max(0, a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    Rat f = rem[i] / b.lead();
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  q = Poly(quo);
  r = Poly(rem);
}

Poly Poly::gcd(const Poly &a0, const Poly &b0) {
  Poly a = a0, b = b0;
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r.monic();
  }
  return a.monic();
}

std::string Poly::str(const std::string &var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Rat &v = c_[i];
    if (v == 0) continue;
    Rat mag = abs(v);
    if (s.empty())
      s += v < 0 ? "-" : "";
    else
      s += v < 0 ? " - " : " + ";
    bool unit = mag == 1 && i > 0;
    if (!unit) s += to_string(mag);
    if (i > 0) s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::string int_poly_str(const IntVec &c, const std::string &var) {
  return Poly::from_int(c).str(var);
}

Poly squarefree_part(const Poly &p) {
  Poly g = Poly::gcd(p, p.derivative());
  Poly q, r;
  Poly::divmod(p, g, q, r);
  return q.monic();
}

static std::vector<Poly> sturm_chain(const Poly &p) {
  std::vector<Poly> s{p, p.derivative()};
  while (!s.back().is_zero()) {
    Poly q, r;
    Poly::divmod(s[s.size() - 2], s.back(), q, r);
    s.push_back(r * Rat(-1));
  }
  s.pop_back();
  return s;
}

static int variations(const std::vector<Poly> &chain, const Rat &x) {
  int v = 0, last = 0;
  for (auto &p : chain) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int count_roots(const Poly &p0, const Rat &a, const Rat &b) {
  Poly p = squarefree_part(p0);
  auto chain = sturm_chain(p);
  return variations(chain, a) - variations(chain, b);
}

Interval refine_root(const Poly &p, Interval iv, long bits) {
  int slo = p.sign_at(iv.lo);
  if (slo == 0) return Interval(iv.lo);
  if (p.sign_at(iv.hi) == 0) return Interval(iv.hi);
  Rat target = Rat(1, 1) / Rat(ipow(2, bits));
  while (iv.width() > target) {
    Rat m = iv.mid();
    int sm = p.sign_at(m);
    if (sm == 0) return Interval(m);
    if (sm == slo)
      iv.lo = m;
    else
      iv.hi = m;
  }
  return iv;
}

IntVec minimal_factor_at(const IntVec &g, const Interval &iv) {
  const int n = static_cast<int>(g.size()) - 1;
  Poly G = Poly::from_int(g);
  if (n <= 1) return g;

  // Roots of the monic g via its companion matrix, then a few Newton steps in long double.
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -g[i].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  using C = std::complex<long double>;
  std::vector<C> roots;
  for (int i = 0; i < n; ++i) {
    C z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 30; ++it) {
      C f = 0, df = 0;
      for (int k = n; k >= 0; --k) {
        df = df * z + f;
        f = f * z + C(static_cast<long double>(g[k].get_d()), 0);
      }
      if (std::abs(df) == 0) break;
      C step = f / df;
      z -= step;
      if (std::abs(step) < 1e-30L) break;
    }
    roots.push_back(z);
  }
  long double target = static_cast<long double>(iv.mid().get_d());
  int ib = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(roots[i] - target) < std::abs(roots[ib] - target)) ib = i;

  std::vector<int> others;
  for (int i = 0; i < n; ++i)
    if (i != ib) others.push_back(i);

  auto try_subset = [&](const std::vector<int> &sel) -> IntVec {
    std::vector<C> prod{C(1, 0)};
    auto mul = [&](C r) {
      std::vector<C> next(prod.size() + 1, C(0, 0));
      for (size_t k = 0; k < prod.size(); ++k) {
        next[k + 1] += prod[k];
        next[k] -= prod[k] * r;
      }
      prod = next;
    };
    mul(roots[ib]);
    for (int i : sel) mul(roots[i]);
    IntVec h;
    for (auto &c : prod) {
      if (std::abs(c.imag()) > 1e-6L) return {};
      long double rr = std::round(c.real());
      if (std::abs(c.real() - rr) > 1e-6L || std::abs(rr) > 1e15L) return {};
      h.push_back(Int(static_cast<long>(rr)));
    }
    Poly H = Poly::from_int(h), q, r;
    Poly::divmod(G, H, q, r);
    if (!r.is_zero()) return {};
    // iv isolates beta among the roots of g, so any root of H in the closed interval is beta.
    if (H.sign_at(iv.lo) * H.sign_at(iv.hi) > 0) return {};
    return h;
  };

  const int cap = 200000;
  int tried = 0;
  for (int k = 0; k < n - 1; ++k) {
    std::vector<int> sel;
    IntVec found;
    std::function<bool(int)> rec = [&](int start) -> bool {
      if (static_cast<int>(sel.size()) == k) {
        ++tried;
        found = try_subset(sel);
        return !found.empty() || tried > cap;
      }
      for (int j = start; j < static_cast<int>(others.size()); ++j) {
        sel.push_back(others[j]);
        if (rec(j + 1)) return true;
        sel.pop_back();
      }
      return false;
    };
    rec(0);
    if (!found.empty()) return found;
    if (tried > cap) break;
  }
  return g;
}

} // namespace lipfrac
