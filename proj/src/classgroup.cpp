#include "lipfrac/classgroup.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace lipfrac {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

IntMat beta_times(const SpecPtr &spec, const IntMat &rows) {
  FieldElem b = FieldElem::beta(spec);
  IntMat out;
  for (auto &r : rows) out.push_back((FieldElem(spec, RatVec(r.begin(), r.end())) * b).int_coords());
  return out;
}

// All lattices L with beta*M ⊆ L ⊆ M, as bases in beta coordinates.
std::vector<IntMat> intermediate_lattices(const SpecPtr &spec, const IntMat &M) {
  RatMat Minv = inverse(to_rat(M));
  RatMat Qr = mul(to_rat(beta_times(spec, M)), Minv);
  IntMat Q;
  for (auto &r : Qr) {
    IntVec v;
    for (auto &x : r) v.push_back(x.get_num());
    Q.push_back(v);
  }
  Int det = abs(Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]);
  std::vector<IntMat> out;
  for (auto &h11 : divisors(det)) {
    for (auto &h22 : divisors(det / h11)) {
      for (Int h12 = 0; h12 < h22; ++h12) {
        IntMat H = {{h11, h12}, {0, h22}};
        if (!lattice_contains(H, Q[0]) || !lattice_contains(H, Q[1])) continue;
        out.push_back(mul(H, M));
      }
    }
  }
  return out;
}

} // namespace

int ClassStructure::class_of(const IntMat &lattice) const {
  Form f = lattice_form(info, lattice);
  Int D = f.disc();
  Form key = wide_class_key(f, D);
  for (size_t i = 0; i < classes.size(); ++i)
    if (classes[i].disc == D && classes[i].key == key) return static_cast<int>(i);
  fail(ErrorCode::VerificationFailed, "lattice class " + key.str() + " missing from enumeration");
}

ClassStructure class_structure(const SpecPtr &spec) {
  ClassStructure cs;
  cs.info = quad_info(spec);
  for (auto &fp : divisors(cs.info.conductor)) {
    Int D = fp * fp * cs.info.fund_disc;
    for (auto &rep : wide_class_reps(D)) {
      ClassStructure::LatticeClass lc;
      lc.disc = D;
      lc.rep = rep;
      lc.key = wide_class_key(rep, D);
      lc.lattice = form_lattice(cs.info, rep);
      cs.classes.push_back(lc);
    }
  }
  // Consistency of the lattice/form dictionary.
  for (size_t i = 0; i < cs.classes.size(); ++i)
    if (cs.class_of(cs.classes[i].lattice) != static_cast<int>(i))
      fail(ErrorCode::VerificationFailed, "lattice/form correspondence is inconsistent");

  UnionFind uf(cs.classes.size());
  for (size_t i = 0; i < cs.classes.size(); ++i)
    for (auto &L : intermediate_lattices(spec, cs.classes[i].lattice))
      uf.unite(static_cast<int>(i), cs.class_of(L));
  std::map<int, int> comp;
  for (size_t i = 0; i < cs.classes.size(); ++i) {
    int root = uf.find(static_cast<int>(i));
    if (!comp.count(root)) {
      int id = static_cast<int>(comp.size());
      comp[root] = id;
    }
    cs.classes[i].component = comp[root];
  }
  cs.localized_count = static_cast<int>(comp.size());
  return cs;
}

long class_number_order(const SpecPtr &spec) {
  if (spec->degree == 1) return 1;
  if (spec->degree != 2) fail(ErrorCode::DegreeUnsupported, "class numbers need degree <= 2");
  return static_cast<long>(class_structure(spec).classes.size());
}

long class_number_localized(const SpecPtr &spec) {
  if (spec->degree == 1) return 1;
  if (spec->degree != 2) fail(ErrorCode::DegreeUnsupported, "class numbers need degree <= 2");
  return class_structure(spec).localized_count;
}

RatMat colon_lattice(const IdealLattice &I, const IdealLattice &J) {
  RatMat acc;
  for (auto &j : ideal_generators(J)) {
    RatMat part = mul(to_rat(I.hnf), j.inverse().mult_matrix());
    acc = acc.empty() ? hnf_rat(part) : lattice_intersection(acc, part);
  }
  return acc;
}

std::optional<FieldElem> find_scaling(const IdealLattice &I0, const IdealLattice &J0, long box) {
  if (!same_spec(I0.owner, J0.owner)) fail(ErrorCode::OwnerMismatch, "ideals over different specs");
  IdealLattice I = saturate(I0), J = saturate(J0);
  const SpecPtr &s = I.owner;
  const int d = s->degree;
  RatMat C = colon_lattice(I, J);
  std::vector<FieldElem> basis;
  for (auto &row : C) basis.emplace_back(s, row);
  if (d == 2) {
    // Lagrange reduction in the Minkowski embedding keeps small elements near the origin.
    auto emb = [&](const FieldElem &x) {
      double b1 = FieldElem::beta(s).approx();
      double b2 = static_cast<double>(-s->beta_min_poly[1].get_d()) - b1;
      double c0 = x.coords()[0].get_d(), c1 = x.coords()[1].get_d();
      return std::pair<double, double>{c0 + c1 * b1, c0 + c1 * b2};
    };
    auto norm2 = [&](const FieldElem &x) {
      auto [u, v] = emb(x);
      return u * u + v * v;
    };
    auto dot = [&](const FieldElem &x, const FieldElem &y) {
      auto [u1, v1] = emb(x);
      auto [u2, v2] = emb(y);
      return u1 * u2 + v1 * v2;
    };
    for (int it = 0; it < 200; ++it) {
      if (norm2(basis[1]) < norm2(basis[0])) std::swap(basis[0], basis[1]);
      double mu = std::round(dot(basis[0], basis[1]) / norm2(basis[0]));
      if (mu == 0) break;
      basis[1] = basis[1] - basis[0] * Rat(static_cast<long>(mu));
    }
  }
  // Enumerate coefficient vectors by increasing sup norm.
  std::vector<long> x(d, 0);
  for (long r = 1; r <= box; ++r) {
    std::vector<long> lo(d, -r);
    x = lo;
    for (;;) {
      long mx = 0;
      for (long v : x) mx = std::max(mx, std::labs(v));
      if (mx == r) {
        FieldElem c = FieldElem::from_rat(s, 0);
        for (int i = 0; i < d; ++i)
          if (x[i]) c = c + basis[i] * Rat(x[i]);
        // Both c and -c scale J onto I; report the positive one.
        if (!c.is_zero() && scale_ideal(J, c).hnf == I.hnf) return c.positive() ? c : -c;
      }
      int k = 0;
      while (k < d && x[k] == r) x[k++] = -r;
      if (k == d) break;
      ++x[k];
    }
  }
  return std::nullopt;
}

std::optional<bool> same_class(const IdealLattice &I0, const IdealLattice &J0) {
  if (!same_spec(I0.owner, J0.owner)) fail(ErrorCode::OwnerMismatch, "ideals over different specs");
  IdealLattice I = saturate(I0), J = saturate(J0);
  const int d = I.owner->degree;
  if (I.hnf == J.hnf) return true;
  if (d == 1) return true;
  if (d == 2) {
    ClassStructure cs = class_structure(I.owner);
    return cs.classes[cs.class_of(I.hnf)].component == cs.classes[cs.class_of(J.hnf)].component;
  }
  if (find_scaling(I, J, 4)) return true;
  return std::nullopt;
}

std::optional<bool> is_principal(const IdealLattice &I) { return same_class(I, whole_ring(I.owner)); }

} // namespace lipfrac
