#include "lipfrac/geometry.hpp"

#include <algorithm>
#include <queue>

#include "lipfrac/errors.hpp"

namespace lipfrac {

Affine Affine::identity(int d) { return {Rat(1), identity_rat(d), RatVec(d, 0), 0}; }

Affine Affine::of(const Similarity &s) { return {s.ratio, s.orth, s.trans, s.lambda}; }

Affine Affine::then(const Affine &inner) const {
  Affine out;
  out.scale = scale * inner.scale;
  out.orth = mul(orth, inner.orth);
  out.trans = apply(inner.trans);
  out.lambda = lambda + inner.lambda;
  return out;
}

RatVec Affine::apply(const RatVec &x) const {
  RatVec y = trans;
  for (size_t i = 0; i < y.size(); ++i) {
    Rat acc = 0;
    for (size_t j = 0; j < x.size(); ++j)
      if (orth[i][j] != 0) acc += orth[i][j] * x[j];
    y[i] += scale * acc;
  }
  return y;
}

RatVec Affine::fixed_point() const {
  // (I - s O) x = t, solved as x^T (I - s O)^T = t^T.
  size_t d = trans.size();
  RatMat m(d, RatVec(d));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) m[j][i] = (i == j ? Rat(1) : Rat(0)) - scale * orth[i][j];
  return solve_left(m, trans);
}

Rat dist2(const RatVec &a, const RatVec &b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Rat t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

Rat box_dist2(const Box &a, const Box &b) {
  Rat s = 0;
  for (size_t i = 0; i < a.lo.size(); ++i) {
    Rat gap = 0;
    if (a.hi[i] < b.lo[i])
      gap = b.lo[i] - a.hi[i];
    else if (b.hi[i] < a.lo[i])
      gap = a.lo[i] - b.hi[i];
    s += gap * gap;
  }
  return s;
}

Rat box_maxdist2(const Box &a, const Box &b) {
  Rat s = 0;
  for (size_t i = 0; i < a.lo.size(); ++i) {
    Rat t = std::max(Rat(a.hi[i] - b.lo[i]), Rat(b.hi[i] - a.lo[i]));
    s += t * t;
  }
  return s;
}

Box box_union(const Box &a, const Box &b) {
  Box c = a;
  for (size_t i = 0; i < a.lo.size(); ++i) {
    if (b.lo[i] < c.lo[i]) c.lo[i] = b.lo[i];
    if (b.hi[i] > c.hi[i]) c.hi[i] = b.hi[i];
  }
  return c;
}

bool box_strictly_inside(const Box &inner, const Box &outer) {
  for (size_t i = 0; i < inner.lo.size(); ++i)
    if (!(outer.lo[i] < inner.lo[i] && inner.hi[i] < outer.hi[i])) return false;
  return true;
}

bool box_inside(const Box &inner, const Box &outer) {
  for (size_t i = 0; i < inner.lo.size(); ++i)
    if (!(outer.lo[i] <= inner.lo[i] && inner.hi[i] <= outer.hi[i])) return false;
  return true;
}

Box AttractorGeometry::image_box(const Affine &a) const {
  const size_t d = hull.lo.size();
  Box out{RatVec(d), RatVec(d)};
  for (size_t i = 0; i < d; ++i) {
    Rat lo = a.trans[i], hi = a.trans[i];
    for (size_t j = 0; j < d; ++j) {
      const Rat &o = a.orth[i][j];
      if (o == 0) continue;
      Rat u = a.scale * o * hull.lo[j], v = a.scale * o * hull.hi[j];
      lo += std::min(u, v);
      hi += std::max(u, v);
    }
    out.lo[i] = lo;
    out.hi[i] = hi;
  }
  return out;
}

std::vector<RatVec> AttractorGeometry::image_points(const Affine &a) const {
  std::vector<RatVec> out;
  for (auto &w : witnesses) out.push_back(a.apply(w));
  return out;
}

Interval AttractorGeometry::threshold2(long k) const {
  Rat f = rpow(ifs.r, 2 * k);
  return {diam2.lo * f, diam2.hi * f};
}

namespace {

// Exact hull for signed-permutation maps. Variables z_a: a < d is lo_a, a >= d is -hi_(a-d).
// Each map i offers z_a <= c_ia + s_i z_phi_i(a); policy iteration finds the least fixed point.
struct HullPolicy {
  Box hull;
  std::vector<RatVec> face_points;
};

HullPolicy exact_hull(const IFS &ifs) {
  const int d = ifs.dim;
  const int n = 2 * d;
  const size_t N = ifs.maps.size();
  std::vector<std::vector<Rat>> c(N, std::vector<Rat>(n));
  std::vector<std::vector<int>> phi(N, std::vector<int>(n));
  for (size_t i = 0; i < N; ++i) {
    auto &m = ifs.maps[i];
    for (int j = 0; j < d; ++j) {
      int col = 0;
      int sign = 1;
      for (int k = 0; k < d; ++k)
        if (m.orth[j][k] != 0) col = k, sign = m.orth[j][k] > 0 ? 1 : -1;
      c[i][j] = m.trans[j];
      phi[i][j] = sign > 0 ? col : d + col;
      c[i][d + j] = -m.trans[j];
      phi[i][d + j] = sign > 0 ? d + col : col;
    }
  }
  std::vector<int> pol(n, 0);
  RatVec z;
  for (int round = 0; round < 1000; ++round) {
    // z = c + S z under the policy, i.e. z^T (I - S)^T = c^T.
    RatMat m(n, RatVec(n, 0));
    RatVec rhs(n);
    for (int a = 0; a < n; ++a) {
      int i = pol[a];
      rhs[a] = c[i][a];
      m[a][a] += 1;
      m[phi[i][a]][a] -= ifs.maps[i].ratio;
    }
    z = solve_left(m, rhs);
    bool changed = false;
    for (int a = 0; a < n; ++a) {
      Rat best = z[a];
      for (size_t i = 0; i < N; ++i) {
        Rat v = c[i][a] + ifs.maps[i].ratio * z[phi[i][a]];
        if (v < best) best = v, pol[a] = static_cast<int>(i), changed = true;
      }
    }
    if (!changed) break;
  }
  HullPolicy out;
  out.hull.lo.resize(d);
  out.hull.hi.resize(d);
  for (int j = 0; j < d; ++j) {
    out.hull.lo[j] = z[j];
    out.hull.hi[j] = -z[d + j];
  }
  // The point attaining z_a: follow the policy to a cycle, take the cycle's fixed point, map back.
  for (int a = 0; a < n; ++a) {
    std::vector<int> seq;
    std::vector<int> seen(n, -1);
    int cur = a;
    while (seen[cur] < 0) {
      seen[cur] = static_cast<int>(seq.size());
      seq.push_back(cur);
      cur = phi[pol[cur]][cur];
    }
    int start = seen[cur];
    Affine cyc = Affine::identity(d);
    for (size_t t = start; t < seq.size(); ++t) cyc = cyc.then(Affine::of(ifs.maps[pol[seq[t]]]));
    RatVec x = cyc.fixed_point();
    for (int t = start - 1; t >= 0; --t) x = Affine::of(ifs.maps[pol[seq[t]]]).apply(x);
    out.face_points.push_back(x);
  }
  return out;
}

// Outer box for general orthogonal parts by iterating box images from an invariant cube.
Box outer_hull(const IFS &ifs) {
  const int d = ifs.dim;
  Rat R = 0;
  for (auto &m : ifs.maps) {
    Rat t = 0;
    for (auto &v : m.trans) t += abs(v);
    Rat need = t / (1 - m.ratio);
    if (need > R) R = need;
  }
  R = ceil_rat(R) + 1;
  Box b{RatVec(d, -R), RatVec(d, R)};
  for (int it = 0; it < 60; ++it) {
    Box nb;
    bool first = true;
    for (auto &m : ifs.maps) {
      AttractorGeometry tmp;
      tmp.hull = b;
      Box img = tmp.image_box(Affine::of(m));
      nb = first ? img : box_union(nb, img);
      first = false;
    }
    for (int j = 0; j < d; ++j) {
      nb.lo[j] = round_down_dyadic(nb.lo[j], 64);
      nb.hi[j] = round_up_dyadic(nb.hi[j], 64);
    }
    b = nb;
  }
  return b;
}

struct PairItem {
  Rat ub;
  Affine a, b;
  bool operator<(const PairItem &o) const { return ub < o.ub; }
};

} // namespace

AttractorGeometry attractor_extent(const IFS &ifs, long depth, const Rat &tol) {
  if (ifs.kind != IfsKind::Geometric) fail(ErrorCode::InvalidInput, "geometry needs a geometric IFS");
  AttractorGeometry g;
  g.ifs = ifs;
  g.signed_perm = std::all_of(ifs.maps.begin(), ifs.maps.end(),
                              [](const Similarity &m) { return is_signed_permutation(m.orth); });
  for (auto &m : ifs.maps) g.witnesses.push_back(Affine::of(m).fixed_point());
  if (g.signed_perm) {
    auto hp = exact_hull(ifs);
    g.hull = hp.hull;
    g.exact_hull = true;
    for (auto &x : hp.face_points) g.witnesses.push_back(x);
  } else {
    g.hull = outer_hull(ifs);
  }
  std::sort(g.witnesses.begin(), g.witnesses.end());
  g.witnesses.erase(std::unique(g.witnesses.begin(), g.witnesses.end()), g.witnesses.end());

  if (ifs.dim == 1 && g.exact_hull) {
    Rat w = g.hull.hi[0] - g.hull.lo[0];
    g.diam2 = {w * w, w * w};
    return g;
  }
  // Branch and bound over cylinder pairs: witness pairs give lower bounds, box pairs upper bounds.
  Rat LB = 0;
  for (auto &x : g.witnesses)
    for (auto &y : g.witnesses) LB = std::max(LB, dist2(x, y));
  std::priority_queue<PairItem> pq;
  Affine id = Affine::identity(ifs.dim);
  pq.push({box_maxdist2(g.hull, g.hull), id, id});
  long steps = 0, max_steps = 2000 * std::max<long>(depth, 1);
  while (!pq.empty()) {
    PairItem top = pq.top();
    if (top.ub <= LB || top.ub - LB <= tol * LB || steps >= max_steps) break;
    pq.pop();
    ++steps;
    std::vector<Affine> as = {top.a}, bs = {top.b};
    auto split = [&](const Affine &x) {
      std::vector<Affine> ch;
      for (auto &m : ifs.maps) ch.push_back(x.then(Affine::of(m)));
      return ch;
    };
    if (top.a.scale >= top.b.scale) as = split(top.a);
    if (top.b.scale >= top.a.scale) bs = split(top.b);
    for (auto &a : as) {
      auto pa = g.image_points(a);
      Box ba = g.image_box(a);
      for (auto &b : bs) {
        auto pb = g.image_points(b);
        for (auto &x : pa)
          for (auto &y : pb) LB = std::max(LB, dist2(x, y));
        Rat ub = box_maxdist2(ba, g.image_box(b));
        if (ub > LB) pq.push({ub, a, b});
      }
    }
  }
  Rat UB = pq.empty() ? LB : std::max(LB, pq.top().ub);
  g.diam2 = {LB, UB};
  g.diameter_steps = steps;
  return g;
}

Interval diameter_interval(const AttractorGeometry &g, long bits) {
  auto root_bounds = [&](const Rat &q, bool up) {
    Rat r;
    if (rational_root(q, 2, &r)) return r;
    Rat lo = 0, hi = std::max(Rat(1), q);
    Rat eps = rpow(Rat(2), -bits);
    while (hi - lo > eps) {
      Rat mid = (lo + hi) / 2;
      (mid * mid < q ? lo : hi) = mid;
    }
    return up ? hi : lo;
  };
  return {root_bounds(g.diam2.lo, false), root_bounds(g.diam2.hi, true)};
}

const char *cmp_name(Cmp c) {
  switch (c) {
  case Cmp::Less: return "Less";
  case Cmp::GreaterEq: return "GreaterEq";
  default: return "Unknown";
  }
}

Cmp certified_compare(const AttractorGeometry &g, const std::vector<Affine> &A, const std::vector<Affine> &B,
                      const Interval &thr2, int depth_cap) {
  struct Item {
    Affine a, b;
    int depth;
  };
  std::vector<Item> stack;
  for (auto &a : A)
    for (auto &b : B) stack.push_back({a, b, 0});
  bool unknown = false;
  long work = 0;
  auto split = [&](const Affine &x) {
    std::vector<Affine> ch;
    for (auto &m : g.ifs.maps) ch.push_back(x.then(Affine::of(m)));
    return ch;
  };
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    Box ba = g.image_box(it.a), bb = g.image_box(it.b);
    if (box_dist2(ba, bb) >= thr2.hi) continue;
    Rat ub = -1;
    auto pa = g.image_points(it.a), pb = g.image_points(it.b);
    for (auto &x : pa)
      for (auto &y : pb) {
        Rat d = dist2(x, y);
        if (ub < 0 || d < ub) ub = d;
      }
    if (ub < thr2.lo) return Cmp::Less;
    if (it.depth >= depth_cap || ++work > 200000) {
      unknown = true;
      continue;
    }
    std::vector<Affine> as = {it.a}, bs = {it.b};
    if (it.a.scale >= it.b.scale) as = split(it.a);
    if (it.b.scale >= it.a.scale) bs = split(it.b);
    for (auto &a : as)
      for (auto &b : bs) stack.push_back({a, b, it.depth + 1});
  }
  return unknown ? Cmp::Unknown : Cmp::GreaterEq;
}

} // namespace lipfrac
