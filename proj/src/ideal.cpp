#include "lipfrac/ideal.hpp"

namespace lipfrac {

Int IdealLattice::index() const {
  Int d = 1;
  for (size_t i = 0; i < hnf.size(); ++i) d *= hnf[i][i];
  return d;
}

std::string IdealLattice::str() const {
  std::string s = "[";
  for (size_t i = 0; i < hnf.size(); ++i) {
    if (i) s += "; ";
    for (size_t j = 0; j < hnf[i].size(); ++j) s += (j ? " " : "") + hnf[i][j].get_str();
  }
  return s + "]";
}

static IntVec times_beta_power(const SpecPtr &spec, const IntVec &y, int j) {
  RatVec c(y.begin(), y.end());
  FieldElem e(spec, c);
  FieldElem b = FieldElem::beta(spec);
  for (int t = 0; t < j; ++t) e = e * b;
  return e.int_coords();
}

IdealLattice order_module(const SpecPtr &spec, const std::vector<IntVec> &gens) {
  IntMat rows;
  for (auto &g : gens)
    for (int j = 0; j < spec->degree; ++j) rows.push_back(times_beta_power(spec, g, j));
  IntMat h = hnf(rows);
  if (static_cast<int>(h.size()) != spec->degree) fail(ErrorCode::ZeroIdeal, "generators span the zero ideal");
  return IdealLattice{spec, h, false};
}

IdealLattice ideal_hnf(const std::vector<FieldElem> &gens, const SpecPtr &spec) {
  std::vector<IntVec> ys;
  for (auto &g : gens) {
    if (g.is_zero()) continue;
    auto f = zp_canonical(g);
    if (!f) fail(ErrorCode::NotMember, "generator " + g.str() + " is not in Z[p]");
    ys.push_back(f->y);
  }
  if (ys.empty()) fail(ErrorCode::ZeroIdeal, "all generators are zero");
  return saturate(order_module(spec, ys));
}

IdealLattice whole_ring(const SpecPtr &spec) {
  return IdealLattice{spec, identity_int(spec->degree), true};
}

bool is_whole_ring(const IdealLattice &I) { return I.index() == 1; }

IdealLattice colon_beta(const IdealLattice &I) {
  const SpecPtr &s = I.owner;
  RatMat binv = FieldElem::p(s).mult_matrix();
  RatMat scaled = mul(to_rat(I.hnf), binv);
  RatMat inter = lattice_intersection(scaled, identity_rat(s->degree));
  IntMat h;
  for (auto &row : inter) {
    IntVec v;
    for (auto &x : row) v.push_back(x.get_num());
    h.push_back(v);
  }
  return IdealLattice{s, h, false};
}

IdealLattice saturate(const IdealLattice &I) {
  if (I.saturated) return I;
  IdealLattice cur = I;
  // Each strict step divides the index by at least 2.
  for (;;) {
    IdealLattice next = colon_beta(cur);
    if (next.hnf == cur.hnf) break;
    cur = next;
  }
  cur.saturated = true;
  return cur;
}

bool lattice_contains(const IntMat &h, const IntVec &y) {
  IntVec v = y;
  for (size_t i = 0; i < h.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] % h[i][i] != 0) return false;
    Int f = v[i] / h[i][i];
    for (size_t j = i; j < v.size(); ++j) v[j] -= f * h[i][j];
  }
  for (auto &x : v)
    if (x != 0) return false;
  return true;
}

IntVec reduce_mod(const IntMat &h, IntVec v) {
  for (size_t i = 0; i < h.size(); ++i) {
    Int f = floor_div(v[i], h[i][i]);
    if (f == 0) continue;
    for (size_t j = i; j < v.size(); ++j) v[j] -= f * h[i][j];
  }
  return v;
}

bool ideal_contains(const IdealLattice &I, const FieldElem &x) {
  if (!I.saturated) fail(ErrorCode::InvalidInput, "membership needs a saturated lattice");
  if (x.is_zero()) return true;
  auto f = zp_canonical(x);
  if (!f) return false;
  return lattice_contains(I.hnf, f->y);
}

std::vector<FieldElem> ideal_generators(const IdealLattice &I) {
  std::vector<FieldElem> g;
  for (auto &row : I.hnf) g.emplace_back(I.owner, RatVec(row.begin(), row.end()));
  return g;
}

bool is_module(const IdealLattice &I) {
  for (auto &row : I.hnf)
    if (!lattice_contains(I.hnf, times_beta_power(I.owner, row, 1))) return false;
  return true;
}

long find_unipotent_level(const IdealLattice &I0) {
  IdealLattice I = saturate(I0);
  const SpecPtr &s = I.owner;
  const int d = s->degree;
  IntVec one(d, 0);
  one[0] = 1;
  one = reduce_mod(I.hnf, one);
  // beta acts invertibly on Z[beta]/I_sat, so its orbit of 1 is a cycle.
  FieldElem b = FieldElem::beta(s);
  IntVec cur = one;
  for (long l = 1;; ++l) {
    FieldElem e(s, RatVec(cur.begin(), cur.end()));
    cur = reduce_mod(I.hnf, (e * b).int_coords());
    if (cur == one) return l;
    if (l > 100000000L) fail(ErrorCode::VerificationFailed, "unipotent level search did not close");
  }
}

IdealLattice scale_ideal(const IdealLattice &I, const FieldElem &c) {
  std::vector<FieldElem> gens;
  for (auto &g : ideal_generators(I)) gens.push_back(g * c);
  return ideal_hnf(gens, I.owner);
}

} // namespace lipfrac
