#include "lipfrac/quadratic.hpp"

#include <map>
#include <set>

namespace lipfrac {

std::string Form::str() const { return "(" + a.get_str() + ", " + b.get_str() + ", " + c.get_str() + ")"; }

namespace {

// x < sqrt(D) for nonsquare D > 0.
bool lt_sqrt(const Int &x, const Int &D) { return x < 0 || x * x < D; }
bool gt_sqrt(const Int &x, const Int &D) { return x > 0 && x * x > D; }

} // namespace

bool is_reduced(const Form &f, const Int &D) {
  Int aa = abs(f.a);
  // |sqrt D - 2|a|| < b < sqrt D
  return f.b > 0 && lt_sqrt(f.b, D) && lt_sqrt(2 * aa - f.b, D) && gt_sqrt(2 * aa + f.b, D);
}

Form rho(const Form &f, const Int &D) {
  Int c = f.c, ac = abs(c), m = 2 * ac, r;
  Int nb = -f.b;
  if (ac * ac > D) {
    r = mod_pos(nb, m);
    if (r > ac) r -= m;
  } else {
    Int s = isqrt(D);
    r = s - mod_pos(s - nb, m);
  }
  Int num = r * r - D;
  return Form{c, r, num / (4 * c)};
}

Form reduce_form(Form f, const Int &D) {
  for (long it = 0; !is_reduced(f, D); ++it) {
    if (it > 100000) fail(ErrorCode::VerificationFailed, "form reduction did not terminate");
    f = rho(f, D);
  }
  return f;
}

std::vector<Form> form_cycle(const Form &f0, const Int &D) {
  std::vector<Form> cyc{f0};
  Form f = rho(f0, D);
  while (!(f == f0)) {
    cyc.push_back(f);
    f = rho(f, D);
    if (cyc.size() > 1000000) fail(ErrorCode::VerificationFailed, "form cycle too long");
  }
  return cyc;
}

Form cycle_canonical(const Form &f, const Int &D) {
  auto cyc = form_cycle(reduce_form(f, D), D);
  return *std::min_element(cyc.begin(), cyc.end());
}

Form wide_class_key(const Form &f, const Int &D) {
  Form g{-f.a, f.b, -f.c};
  return std::min(cycle_canonical(f, D), cycle_canonical(g, D));
}

std::vector<Form> wide_class_reps(const Int &D) {
  Int s = isqrt(D);
  std::set<Form> reduced;
  for (Int b = 1; b <= s; ++b) {
    if (mod_pos(b - D, 2) != 0) continue;
    Int num = b * b - D; // = 4ac < 0
    for (Int aa = 1; aa <= s; ++aa) {
      for (int sg : {1, -1}) {
        Int a = aa * sg;
        if (num % (4 * a) != 0) continue;
        Form f{a, b, num / (4 * a)};
        if (!is_reduced(f, D)) continue;
        if (gcd(gcd(f.a, f.b), f.c) != 1) continue;
        reduced.insert(f);
      }
    }
  }
  std::map<Form, Form> canon;
  for (auto &f : reduced) {
    if (canon.count(f)) continue;
    auto cyc = form_cycle(f, D);
    Form m = *std::min_element(cyc.begin(), cyc.end());
    for (auto &g : cyc) canon[g] = m;
  }
  std::map<Form, Form> rep; // wide key -> representative with a > 0
  for (auto &[f, m] : canon) {
    Form partner = canon.at(Form{-f.a, f.b, -f.c});
    Form key = std::min(m, partner);
    if (f.a <= 0) continue;
    auto it = rep.find(key);
    if (it == rep.end() || f < it->second) rep[key] = f;
  }
  std::vector<Form> out;
  for (auto &[k, f] : rep) out.push_back(f);
  return out;
}

QuadUnit fundamental_unit(const Int &D) {
  const Int sigma = mod_pos(D, 2);
  // theta = (-sigma + sqrt D)/2 = -omega'; convergents x/y of theta give units x + y*omega.
  Int P = -sigma, Q = 2, s = isqrt(D);
  Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (long it = 0; it < 10000000; ++it) {
    Int a = Q > 0 ? floor_div(P + s, Q) : floor_div(-P - s - 1, -Q);
    Int h = a * h1 + h2, k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    if (k > 0) {
      Int n = h * h + sigma * h * k + ((sigma * sigma - D) / 4) * k * k;
      if (n == 1 || n == -1) return QuadUnit{2 * h + k * sigma, k, n == 1 ? 1 : -1};
    }
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  fail(ErrorCode::VerificationFailed, "fundamental unit search did not terminate");
}

std::vector<Int> divisors(const Int &n) {
  std::vector<Int> ds{1};
  for (auto &[p, e] : factorize(n)) {
    size_t cur = ds.size();
    Int pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

QuadInfo quad_info(const SpecPtr &spec) {
  if (spec->degree != 2) fail(ErrorCode::DegreeUnsupported, "quadratic data needs degree 2");
  QuadInfo q;
  const IntVec &m = spec->beta_min_poly;
  q.trace = -m[1];
  q.norm = m[0];
  q.disc = m[1] * m[1] - 4 * m[0];
  // Largest f with disc/f^2 a discriminant (= 0, 1 mod 4).
  Int sqf = 1, sqpart = 1;
  for (auto &[p, e] : factorize(q.disc)) {
    if (e % 2) sqf *= p;
    sqpart *= ipow(p, e / 2);
  }
  if (q.disc < 0) fail(ErrorCode::DegreeUnsupported, "imaginary quadratic field");
  q.squarefree = sqf;
  Int f = sqpart;
  Int d0 = q.disc / (f * f);
  if (mod_pos(d0, 4) != 0 && mod_pos(d0, 4) != 1) {
    f /= 2;
    d0 = q.disc / (f * f);
  }
  q.conductor = f;
  q.fund_disc = d0;
  FieldElem t = FieldElem::beta(spec) * Rat(2) - FieldElem::from_rat(spec, Rat(q.trace));
  q.orient = t.sign();
  return q;
}

Form lattice_form(const QuadInfo &q, const IntMat &basis) {
  Int u1 = basis[0][0], v1 = basis[0][1], u2 = basis[1][0], v2 = basis[1][1];
  Int o = (u1 * v2 - u2 * v1) * q.orient;
  if (o == 0) fail(ErrorCode::InvalidInput, "degenerate lattice basis");
  if (o < 0) {
    std::swap(u1, u2);
    std::swap(v1, v2);
  }
  auto nrm = [&](const Int &u, const Int &v) -> Int { return u * u + q.trace * u * v + q.norm * v * v; };
  Int A = nrm(u1, v1), C = nrm(u2, v2);
  Int B = 2 * u1 * u2 + q.trace * (u1 * v2 + u2 * v1) + 2 * q.norm * v1 * v2;
  Int g = gcd(gcd(A, B), C);
  return Form{A / g, B / g, C / g};
}

IntMat form_lattice(const QuadInfo &q, const Form &f) {
  Int Dp = f.disc();
  Int fp2 = Dp / q.fund_disc, fp;
  if (!is_square(fp2, &fp)) fail(ErrorCode::InvalidInput, "form discriminant not in the field");
  Rat ratio(fp, q.conductor);
  ratio.canonicalize();
  // sqrt(D') = ratio * orient * (2 beta - T)
  Rat s = ratio * q.orient;
  RatMat rows = {{Rat(f.a), Rat(0)}, {(Rat(f.b) - s * Rat(q.trace)) / 2, s}};
  Int den = 1;
  for (auto &r : rows)
    for (auto &x : r) den = lcm(den, x.get_den());
  IntMat out;
  for (auto &r : rows) {
    IntVec v;
    for (auto &x : r) v.push_back(Rat(x * Rat(den)).get_num());
    out.push_back(v);
  }
  return out;
}

} // namespace lipfrac
