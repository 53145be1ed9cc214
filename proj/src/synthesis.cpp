#include "lipfrac/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "lipfrac/errors.hpp"
#include "lipfrac/positivity.hpp"

namespace lipfrac {

namespace {

FieldElem one(const SpecPtr &s) { return FieldElem::from_rat(s, 1); }

std::vector<long> exponents_of(const IntVec &c) {
  std::vector<long> out;
  for (size_t j = 0; j < c.size(); ++j)
    for (Int k = 0; k < c[j]; ++k) out.push_back(static_cast<long>(j));
  return out;
}

// 1 = sum_l xi_l p^l as an exponent multiset, from the relation or from beta = 1/p.
std::vector<long> unit_relation(const SpecPtr &s) {
  std::vector<long> out;
  if (!s->relation.empty()) {
    for (size_t l = 0; l < s->relation.size(); ++l)
      for (Int k = 0; k < s->relation[l]; ++k) out.push_back(static_cast<long>(l + 1));
    return out;
  }
  for (long e : exponents_of(positive_representation(FieldElem::beta(s)))) out.push_back(e + 1);
  return out;
}

Box unit_cube(int d) { return Box{RatVec(d, Rat(0)), RatVec(d, Rat(1))}; }

RatMat reflection(int d, int mask) {
  RatMat m = identity_rat(d);
  for (int k = 0; k < d; ++k)
    if (mask >> k & 1) m[k][k] = -1;
  return m;
}

// Corner point of {1/3, 2/3}^d; index 0 is (2/3, ..., 2/3).
RatVec corner(int d, size_t t) {
  RatVec y(d);
  for (int k = 0; k < d; ++k) y[k] = (t >> (d - 1 - k) & 1) ? Rat(1, 3) : Rat(2, 3);
  return y;
}

long total_count(const IntVec &c) {
  Int s = 0;
  for (auto &x : c) s += x;
  return s.get_si();
}

// Positive generators with short positive representations, the ideal unchanged.
std::vector<FieldElem> tidy_generators(std::vector<FieldElem> gens) {
  std::vector<FieldElem> nz;
  for (auto &g : gens)
    if (!g.is_zero()) nz.push_back(g);
  if (nz.empty()) fail(ErrorCode::ZeroIdeal, "all generators are zero");
  FieldElem pos = nz[0] * nz[0];
  for (auto &g : nz)
    if (g.positive()) pos = g;
  for (auto &g : nz)
    for (long k = 1; !g.positive(); ++k) g = g + pos;
  // Try g - k h for the other generators and keep the cheapest positive candidate.
  for (size_t i = 0; i < nz.size(); ++i) {
    long best = total_count(positive_representation(nz[i]));
    for (size_t j = 0; j < nz.size(); ++j) {
      if (i == j) continue;
      for (long k = -6; k <= 6; ++k) {
        if (k == 0) continue;
        FieldElem c = nz[i] - nz[j] * Rat(k);
        if (!c.positive()) continue;
        long cost = total_count(positive_representation(c));
        if (cost < best) {
          best = cost;
          nz[i] = c;
        }
      }
    }
  }
  return nz;
}

bool has_consecutive(const std::vector<long> &u) {
  for (long x : u)
    if (std::find(u.begin(), u.end(), x + 1) != u.end()) return true;
  return false;
}

} // namespace

IFS construct_member(const SpecPtr &spec, const Rat &r, int dim_hint) {
  auto ne = family_nonempty(spec, r);
  if (!ne || !*ne) fail(ErrorCode::EmptyFamily, "no member with this p and r");
  std::vector<Similarity> maps;
  if (!spec->relation.empty() && dim_hint <= 1) {
    // Place the copies left to right with equal gaps when they fit in (0,1).
    std::vector<long> lam = unit_relation(spec);
    Rat total = 0;
    for (long l : lam) total += rpow(r, l);
    if (total < 1 && lam.size() >= 2) {
      Rat gap = (1 - total) / Rat(static_cast<long>(lam.size() - 1));
      Rat pos = 0;
      for (long l : lam) {
        maps.push_back({rpow(r, l), {}, {pos}, 0});
        pos += rpow(r, l) + gap;
      }
      IFS out = make_ifs(1, maps, OpenRegion{{unit_cube(1)}});
      if (out.r != r || !same_spec(out.spec, spec)) fail(ErrorCode::VerificationFailed, "member has wrong p or r");
      return out;
    }
  }
  const FieldElem p = FieldElem::p(spec);
  long ell = 1;
  while (!(rpow(r, ell) < Rat(1, 2) && (one(spec) - p.pow(ell) - p.pow(ell + 1)).positive())) {
    if (++ell > 200) fail(ErrorCode::VerificationFailed, "no level ell found for the corner construction");
  }
  FieldElem rest = (one(spec) - p.pow(ell) - p.pow(ell + 1)) * FieldElem::beta(spec).pow(ell);
  std::vector<long> lam = {ell, ell + 1};
  for (long e : exponents_of(positive_representation(rest))) lam.push_back(ell + e);
  int d = std::max(dim_hint, 1);
  while ((size_t(1) << d) < lam.size()) ++d;
  for (size_t i = 0; i < lam.size(); ++i) {
    RatVec t(d);
    for (int k = 0; k < d; ++k) t[k] = (i >> (d - 1 - k) & 1) ? Rat(1, 2) : Rat(0);
    maps.push_back({rpow(r, lam[i]), {}, t, 0});
  }
  IFS out = make_ifs(d, maps, OpenRegion{{unit_cube(d)}});
  if (out.r != r || !same_spec(out.spec, spec)) fail(ErrorCode::VerificationFailed, "member has wrong p or r");
  return out;
}

IdealConstruction construct_ifs_with_ideal(const SpecPtr &spec, const Rat &r, const IdealLattice &I) {
  return construct_ifs_with_ideal(spec, r, ideal_generators(I));
}

IdealConstruction construct_ifs_with_ideal(const SpecPtr &spec, const Rat &r, const std::vector<FieldElem> &gens) {
  if (gens.empty()) fail(ErrorCode::EmptyInput, "no generators");
  auto ne = family_nonempty(spec, r);
  if (!ne || !*ne) fail(ErrorCode::EmptyFamily, "no member with this p and r");
  const IdealLattice I = ideal_hnf(gens, spec);
  const FieldElem p = FieldElem::p(spec);
  IdealConstruction c;

  // 1 - p^ell in I with r^ell < 1/6.
  long base = find_unipotent_level(I);
  c.ell = base;
  while (!(rpow(r, c.ell) < Rat(1, 6))) c.ell += base;

  // Positive generators, one of them carrying exponents u and u+1.
  c.a = tidy_generators(gens);
  for (auto &a : c.a) c.u.push_back(exponents_of(positive_representation(a)));
  size_t lead = c.a.size();
  for (size_t i = 0; i < c.a.size() && lead == c.a.size(); ++i)
    if (has_consecutive(c.u[i])) lead = i;
  if (lead == c.a.size()) {
    long u = 0;
    while (!(c.a[0] - p.pow(u) - p.pow(u + 1)).positive()) ++u;
    std::vector<long> ex = {u, u + 1};
    for (long e : exponents_of(positive_representation(c.a[0] - p.pow(u) - p.pow(u + 1)))) ex.push_back(e);
    std::sort(ex.begin(), ex.end());
    c.u[0] = ex;
    lead = 0;
  }
  std::swap(c.a[0], c.a[lead]);
  std::swap(c.u[0], c.u[lead]);

  // 1 - p^ell = sum a_i b_i with b_i written using exponents v with r^v < 1/6.
  c.b = positive_combination(c.a, one(spec) - p.pow(c.ell));
  long vmin = 1;
  while (!(rpow(r, vmin) < Rat(1, 6))) ++vmin;
  const std::vector<long> unit = unit_relation(spec);
  for (auto &b : c.b) {
    std::vector<long> v = exponents_of(positive_representation(b)), done;
    while (!v.empty()) {
      long e = v.back();
      v.pop_back();
      if (e >= vmin)
        done.push_back(e);
      else
        for (long l : unit) v.push_back(e + l);
    }
    std::sort(done.begin(), done.end());
    c.v.push_back(done);
  }

  const size_t m = c.a.size();
  size_t maxN = 0, sumM = 0;
  for (size_t i = 0; i < m; ++i) {
    maxN = std::max(maxN, c.u[i].size());
    sumM += c.v[i].size();
  }
  c.dim = 1;
  while ((size_t(1) << c.dim) < std::max(maxN, sumM)) ++c.dim;
  const int d = c.dim;

  // T_i = { r^u T_Lambda }, Lambda running through distinct coordinate subsets.
  for (size_t i = 0; i < m; ++i) {
    std::vector<int> masks;
    for (size_t j = 0; j < c.u[i].size(); ++j) masks.push_back(static_cast<int>(j));
    c.reflections.push_back(masks);
  }
  std::vector<Similarity> maps = {{rpow(r, c.ell), identity_rat(d), RatVec(d, 0), 0}};
  std::vector<std::vector<RatVec>> y(m);
  size_t t = 0;
  for (size_t i = 0; i < m; ++i)
    for (long vij : c.v[i]) {
      y[i].push_back(corner(d, t++));
      for (size_t j = 0; j < c.u[i].size(); ++j)
        maps.push_back({rpow(r, vij + c.u[i][j]), reflection(d, c.reflections[i][j]), y[i].back(), 0});
    }
  c.ifs = make_ifs(d, maps, OpenRegion{{unit_cube(d)}});
  if (c.ifs.r != r || !same_spec(c.ifs.spec, spec))
    fail(ErrorCode::VerificationFailed, "constructed system has wrong p or r");

  // E_0 = S_0(E_0) u S_ij(E_i);  E_i = S_0(E_i) u T S_i'j(E_i').
  GDGraph &gd = c.graph;
  gd.dim = d;
  gd.r = r;
  gd.spec = spec;
  gd.names.push_back("E0");
  for (size_t i = 0; i < m; ++i) gd.names.push_back("E" + std::to_string(i + 1));
  const RatMat id = identity_rat(d);
  gd.edges.push_back({0, 0, c.ell, id, RatVec(d, 0)});
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < c.v[i].size(); ++j) gd.edges.push_back({0, i + 1, c.v[i][j], id, y[i][j]});
  for (size_t i = 0; i < m; ++i) {
    gd.edges.push_back({i + 1, i + 1, c.ell, id, RatVec(d, 0)});
    for (size_t k = 0; k < c.u[i].size(); ++k) {
      RatMat T = reflection(d, c.reflections[i][k]);
      Rat scale = rpow(r, c.u[i][k]);
      for (size_t i2 = 0; i2 < m; ++i2)
        for (size_t j = 0; j < c.v[i2].size(); ++j) {
          RatVec tr(d);
          for (int q = 0; q < d; ++q) tr[q] = scale * T[q][q] * y[i2][j][q];
          gd.edges.push_back({i + 1, i2 + 1, c.u[i][k] + c.v[i2][j], T, tr});
        }
    }
  }
  std::vector<size_t> vo;
  for (size_t i = 1; i <= m; ++i) vo.push_back(i);
  gd.v_o = vo;
  if (ideal_from_graph(gd, vo) != I)
    fail(ErrorCode::VerificationFailed, "constructed system does not realize the ideal");
  return c;
}

SuitablePlan suitable_decomposition(const AttractorGeometry &g, long level, const std::vector<size_t> &family,
                                    const std::vector<FieldElem> &targets,
                                    const std::optional<IdealLattice> &alphabet_ideal, long max_order) {
  const SpecPtr &s = g.ifs.spec;
  if (targets.empty() || family.empty()) fail(ErrorCode::EmptyInput, "empty family or targets");
  BlockDecomposition base = block_decomposition(g, level);
  FieldElem have = FieldElem::from_rat(s, 0), want = FieldElem::from_rat(s, 0);
  std::vector<std::vector<int>> words;
  for (size_t b : family) {
    if (b >= base.blocks.size()) fail(ErrorCode::InvalidInput, "family names a missing block");
    have = have + poly_at_p(base.blocks[b].poly, s);
    for (size_t m : base.blocks[b].members) words.push_back(base.cylinders[m].word);
  }
  for (auto &a : targets) {
    if (!a.positive()) fail(ErrorCode::TargetsInfeasible, "targets must be positive");
    if (alphabet_ideal && !ideal_contains(*alphabet_ideal, a))
      fail(ErrorCode::AlphabetNotInIdeal, "target " + a.str() + " is not in the ideal");
    want = want + a;
  }
  if (have != want) fail(ErrorCode::TargetsInfeasible, "targets do not sum to the measure of the family");
  std::sort(words.begin(), words.end());
  auto inside = [&](const std::vector<int> &w) {
    for (auto &pre : words)
      if (pre.size() <= w.size() && std::equal(pre.begin(), pre.end(), w.begin())) return true;
    return false;
  };
  const FieldElem p = FieldElem::p(s);
  for (long K = 0; K <= max_order; ++K) {
    SuitablePlan plan;
    plan.level = level;
    plan.order = K;
    plan.refined = K == 0 ? base : block_decomposition(g, level + K);
    // Blocks under the family, grouped by polynomial.
    std::map<IntVec, std::vector<size_t>> by_poly;
    for (size_t b = 0; b < plan.refined.blocks.size(); ++b) {
      auto &blk = plan.refined.blocks[b];
      if (inside(plan.refined.cylinders[blk.members[0]].word)) by_poly[blk.poly].push_back(b);
    }
    std::vector<IntVec> polys;
    std::vector<FieldElem> val;
    std::vector<double> approx;
    std::vector<long> avail;
    for (auto &[poly, ids] : by_poly) {
      polys.push_back(poly);
      val.push_back(poly_at_p(poly, s));
      approx.push_back(val.back().approx());
      avail.push_back(static_cast<long>(ids.size()));
    }
    // Target i needs sum n_P P(p) = a_i p^{-K}.
    std::vector<FieldElem> goal;
    for (auto &a : targets) goal.push_back(a * FieldElem::beta(s).pow(K));
    std::vector<std::vector<long>> assign(targets.size(), std::vector<long>(polys.size(), 0));
    long work = 0;
    const long work_cap = 2000000;
    std::function<bool(size_t, size_t, double, FieldElem)> fill = [&](size_t i, size_t q, double acc,
                                                                       FieldElem sum) -> bool {
      if (++work > work_cap) return false;
      double target = goal[i].approx();
      if (acc > target + 1e-9) return false;
      if (q == polys.size()) {
        if (sum != goal[i]) return false;
        if (i + 1 == targets.size()) {
          for (long a : avail)
            if (a != 0) return false;
          return true;
        }
        return fill(i + 1, 0, 0, FieldElem::from_rat(s, 0));
      }
      for (long n = std::min<long>(avail[q], static_cast<long>((target - acc) / approx[q] + 1e-9)); n >= 0; --n) {
        assign[i][q] = n;
        avail[q] -= n;
        bool ok = fill(i, q + 1, acc + n * approx[q], sum + val[q] * Rat(n));
        avail[q] += n;
        if (ok) return true;
      }
      assign[i][q] = 0;
      return false;
    };
    bool found = fill(0, 0, 0, FieldElem::from_rat(s, 0));
    plan.searched_assignments = work;
    if (!found) continue;
    std::vector<size_t> next(polys.size(), 0);
    for (size_t i = 0; i < targets.size(); ++i) {
      std::vector<size_t> part;
      IntVec summed;
      FieldElem mu = FieldElem::from_rat(s, 0);
      for (size_t q = 0; q < polys.size(); ++q)
        for (long n = 0; n < assign[i][q]; ++n) {
          size_t b = by_poly[polys[q]][next[q]++];
          part.push_back(b);
          auto &poly = plan.refined.blocks[b].poly;
          if (summed.size() < poly.size()) summed.resize(poly.size(), 0);
          for (size_t z = 0; z < poly.size(); ++z) summed[z] += poly[z];
          mu = mu + poly_at_p(poly, s) * p.pow(level + K);
        }
      if (mu != targets[i] * p.pow(level)) fail(ErrorCode::VerificationFailed, "plan part misses its target");
      std::sort(part.begin(), part.end());
      plan.parts.push_back(part);
      plan.part_polys.push_back(summed);
    }
    return plan;
  }
  fail(ErrorCode::TargetsInfeasible, "no suitable decomposition up to order " + std::to_string(max_order));
}

namespace {

// Parent block index at the previous level for every block of d.
std::vector<size_t> parents_of(const BlockDecomposition &up, const BlockDecomposition &d) {
  std::map<std::vector<int>, size_t> owner;
  for (size_t b = 0; b < up.blocks.size(); ++b)
    for (size_t m : up.blocks[b].members) owner[up.cylinders[m].word] = b;
  std::vector<size_t> out;
  for (auto &blk : d.blocks) {
    const auto &w = d.cylinders[blk.members[0]].word;
    size_t found = SIZE_MAX;
    for (size_t len = w.size(); len > 0 && found == SIZE_MAX; --len) {
      auto it = owner.find(std::vector<int>(w.begin(), w.begin() + len));
      if (it != owner.end()) found = it->second;
    }
    if (found == SIZE_MAX) fail(ErrorCode::VerificationFailed, "block without a parent");
    out.push_back(found);
  }
  return out;
}

// Groups of X and Y with equal sums: equal singletons first, then matching prefixes.
std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>>
match_groups(const std::vector<size_t> &X, const std::vector<FieldElem> &vx, const std::vector<size_t> &Y,
             const std::vector<FieldElem> &vy) {
  std::vector<std::pair<std::vector<size_t>, std::vector<size_t>>> out;
  std::vector<bool> usedY(Y.size(), false);
  std::vector<size_t> restX, restY;
  for (size_t i = 0; i < X.size(); ++i) {
    bool hit = false;
    for (size_t j = 0; j < Y.size() && !hit; ++j)
      if (!usedY[j] && vx[i] == vy[j]) {
        usedY[j] = hit = true;
        out.push_back({{X[i]}, {Y[j]}});
      }
    if (!hit) restX.push_back(i);
  }
  for (size_t j = 0; j < Y.size(); ++j)
    if (!usedY[j]) restY.push_back(j);
  size_t i0 = 0, j0 = 0;
  while (i0 < restX.size() || j0 < restY.size()) {
    if (i0 == restX.size() || j0 == restY.size()) fail(ErrorCode::VerificationFailed, "unbalanced witness step");
    FieldElem sx = vx[restX[i0]] * Rat(0);
    bool done = false;
    for (size_t i = i0; i < restX.size() && !done; ++i) {
      sx = sx + vx[restX[i]];
      FieldElem sy = sx * Rat(0);
      for (size_t j = j0; j < restY.size(); ++j) {
        sy = sy + vy[restY[j]];
        if (sy == sx) {
          std::pair<std::vector<size_t>, std::vector<size_t>> grp;
          for (size_t a = i0; a <= i; ++a) grp.first.push_back(X[restX[a]]);
          for (size_t b = j0; b <= j; ++b) grp.second.push_back(Y[restY[b]]);
          out.push_back(grp);
          i0 = i + 1;
          j0 = j + 1;
          done = true;
          break;
        }
      }
    }
    if (!done) fail(ErrorCode::VerificationFailed, "remaining measures do not balance");
  }
  return out;
}

struct GroupGeometry {
  double diam_hi = 0, diam_lo = 0;
  Box hull;
};

GroupGeometry group_geometry(const AttractorGeometry &g, const BlockDecomposition &d,
                             const std::vector<size_t> &blocks) {
  GroupGeometry gg;
  std::vector<RatVec> pts;
  bool first = true;
  for (size_t b : blocks) {
    gg.hull = first ? d.blocks[b].hull : box_union(gg.hull, d.blocks[b].hull);
    first = false;
    for (size_t m : d.blocks[b].members)
      for (auto &x : g.image_points(d.cylinders[m].map)) pts.push_back(x);
  }
  gg.diam_hi = std::sqrt(to_double(box_maxdist2(gg.hull, gg.hull)));
  double lo2 = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) lo2 = std::max(lo2, to_double(dist2(pts[i], pts[j])));
  gg.diam_lo = std::sqrt(lo2);
  return gg;
}

double distance(const RatVec &a, const RatVec &b) { return std::sqrt(to_double(dist2(a, b))); }

} // namespace

CylinderWitness cylinder_witness(const IFS &S, const IFS &T, long depth) {
  if (S.kind != IfsKind::Geometric || T.kind != IfsKind::Geometric)
    fail(ErrorCode::RouteUnsupported, "witnesses need geometric systems");
  if (S.r != T.r || !same_spec(S.spec, T.spec))
    fail(ErrorCode::RouteUnsupported, "witnesses are built inside one family (same p and r)");
  if (depth < 1) fail(ErrorCode::InvalidInput, "depth must be positive");
  IfsIdeal IS = ideal_of_ifs(S), IT = ideal_of_ifs(T);
  if (IS.status != IdealStatus::Exact || IT.status != IdealStatus::Exact)
    fail(ErrorCode::RouteUnsupported, "ideals are not exact");
  if (!(IS.ideal == IT.ideal))
    fail(ErrorCode::RouteUnsupported, "ideals differ by a scaling; the dense-island route is needed");
  const SpecPtr &s = S.spec;
  auto gS = attractor_extent(S), gT = attractor_extent(T);
  CylinderWitness w;
  w.depth = depth;
  w.varrho = S.r;
  for (long k = 1; k <= depth; ++k) {
    w.s_levels.push_back(block_decomposition(gS, k));
    w.t_levels.push_back(block_decomposition(gT, k));
  }
  auto values = [&](const BlockDecomposition &d, const std::vector<size_t> &ids) {
    std::vector<FieldElem> v;
    for (size_t b : ids) v.push_back(poly_at_p(d.blocks[b].poly, s));
    return v;
  };
  // Level 1 matches all blocks of both sets.
  {
    std::vector<size_t> X(w.s_levels[0].blocks.size()), Y(w.t_levels[0].blocks.size());
    std::iota(X.begin(), X.end(), 0);
    std::iota(Y.begin(), Y.end(), 0);
    std::vector<WitnessPair> fam;
    for (auto &[a, b] : match_groups(X, values(w.s_levels[0], X), Y, values(w.t_levels[0], Y)))
      fam.push_back({0, a, b});
    w.families.push_back(fam);
  }
  for (long k = 1; k < depth; ++k) {
    auto &ds = w.s_levels[k], &dt = w.t_levels[k];
    auto ps = parents_of(w.s_levels[k - 1], ds), pt = parents_of(w.t_levels[k - 1], dt);
    std::vector<WitnessPair> fam;
    const auto &up = w.families[k - 1];
    std::vector<size_t> pair_of_s(w.s_levels[k - 1].blocks.size()), pair_of_t(w.t_levels[k - 1].blocks.size());
    for (size_t q = 0; q < up.size(); ++q) {
      for (size_t b : up[q].s_blocks) pair_of_s[b] = q;
      for (size_t b : up[q].t_blocks) pair_of_t[b] = q;
    }
    std::vector<std::vector<size_t>> X(up.size()), Y(up.size());
    for (size_t b = 0; b < ds.blocks.size(); ++b) X[pair_of_s[ps[b]]].push_back(b);
    for (size_t b = 0; b < dt.blocks.size(); ++b) Y[pair_of_t[pt[b]]].push_back(b);
    for (size_t q = 0; q < up.size(); ++q)
      for (auto &[a, b] : match_groups(X[q], values(ds, X[q]), Y[q], values(dt, Y[q]))) fam.push_back({q, a, b});
    w.families.push_back(fam);
  }
  // Exact measure-linear check with a = 1.
  w.measures_exact = true;
  for (size_t k = 0; k < w.families.size(); ++k)
    for (auto &pr : w.families[k]) {
      FieldElem ms = FieldElem::from_rat(s, 0), mt = ms;
      for (size_t b : pr.s_blocks) ms = ms + poly_at_p(w.s_levels[k].blocks[b].poly, s);
      for (size_t b : pr.t_blocks) mt = mt + poly_at_p(w.t_levels[k].blocks[b].poly, s);
      w.measures_exact = w.measures_exact && ms == mt;
    }
  if (!w.measures_exact) fail(ErrorCode::VerificationFailed, "witness pairs with unequal measures");

  // Structure constant iota from measured sizes and gaps on both sides.
  const double rho = to_double(S.r);
  const double FS_lo = std::sqrt(to_double(gS.diam2.lo)), FS_hi = std::sqrt(to_double(gS.diam2.hi));
  const double FT_lo = std::sqrt(to_double(gT.diam2.lo)), FT_hi = std::sqrt(to_double(gT.diam2.hi));
  double iota = 1;
  for (size_t k = 0; k < w.families.size(); ++k) {
    double rk = std::pow(rho, static_cast<double>(k + 1));
    for (int side = 0; side < 2; ++side) {
      const AttractorGeometry &g = side == 0 ? gS : gT;
      const BlockDecomposition &d = side == 0 ? w.s_levels[k] : w.t_levels[k];
      double Flo = side == 0 ? FS_lo : FT_lo, Fhi = side == 0 ? FS_hi : FT_hi;
      std::vector<GroupGeometry> geo;
      for (auto &pr : w.families[k]) geo.push_back(group_geometry(g, d, side == 0 ? pr.s_blocks : pr.t_blocks));
      for (auto &gg : geo) {
        iota = std::max(iota, gg.diam_hi / Flo / rk);
        iota = std::max(iota, rk / (gg.diam_lo / Fhi));
      }
      for (size_t a = 0; a < geo.size(); ++a)
        for (size_t b = a + 1; b < geo.size(); ++b) {
          double gap = std::sqrt(to_double(box_dist2(geo[a].hull, geo[b].hull)));
          iota = std::max(iota, rk / (gap / Fhi));
        }
    }
  }
  w.iota = iota;
  w.bound = iota * iota / rho;

  // Sample one point of E per deepest cylinder and compare distortions.
  const auto &last = w.families.back();
  const auto &ds = w.s_levels.back(), &dt = w.t_levels.back();
  std::vector<RatVec> xs, ys;
  for (auto &pr : last) {
    xs.push_back(gS.image_points(ds.cylinders[ds.blocks[pr.s_blocks[0]].members[0]].map)[0]);
    ys.push_back(gT.image_points(dt.cylinders[dt.blocks[pr.t_blocks[0]].members[0]].map)[0]);
  }
  const double FS = (FS_lo + FS_hi) / 2, FT = (FT_lo + FT_hi) / 2;
  const size_t n = xs.size();
  const long cap = 20000;
  for (size_t a = 0; a < n && w.sampled_pairs < cap; ++a)
    for (size_t b = a + 1; b < n && w.sampled_pairs < cap; ++b) {
      double ratio = (distance(ys[a], ys[b]) / FT) / (distance(xs[a], xs[b]) / FS);
      w.max_distortion = std::max({w.max_distortion, ratio, 1 / ratio});
      ++w.sampled_pairs;
    }
  return w;
}

} // namespace lipfrac
