#include "lipfrac/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>

#include "lipfrac/errors.hpp"
#include "lipfrac/perron.hpp"

namespace lipfrac {

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Connected components under certified distance < threshold, ordered by least member.
std::vector<std::vector<size_t>> cluster(const AttractorGeometry &g, const std::vector<Affine> &maps,
                                         const Interval &thr2, long *pairs) {
  const size_t n = maps.size();
  std::vector<Box> boxes;
  boxes.reserve(n);
  for (auto &m : maps) boxes.push_back(g.image_box(m));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (boxes[a].lo[0] != boxes[b].lo[0]) return boxes[a].lo[0] < boxes[b].lo[0];
    return a < b;
  });
  UnionFind uf(n);
  for (size_t x = 0; x < n; ++x) {
    size_t a = order[x];
    for (size_t y = x + 1; y < n; ++y) {
      size_t b = order[y];
      Rat gap = boxes[b].lo[0] - boxes[a].hi[0];
      if (gap > 0 && gap * gap >= thr2.hi) break;
      if (uf.find(a) == uf.find(b)) continue;
      if (box_dist2(boxes[a], boxes[b]) >= thr2.hi) continue;
      if (pairs) ++*pairs;
      Cmp c = certified_compare(g, {maps[a]}, {maps[b]}, thr2);
      if (c == Cmp::Unknown)
        fail(ErrorCode::PredicateUnresolved, "distance comparison at the block threshold did not resolve");
      if (c == Cmp::Less) uf.unite(a, b);
    }
  }
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(i);
  std::vector<std::vector<size_t>> out;
  for (auto &[root, members] : groups) out.push_back(members); // roots are least members
  return out;
}

std::string type_key(const std::vector<TypeMember> &ms) {
  std::string k;
  for (auto &m : ms) {
    k += std::to_string(m.offset) + ":";
    for (auto &row : m.orth)
      for (auto &v : row) k += to_string(v) + ",";
    k += "|";
    for (auto &v : m.trans) k += to_string(v) + ",";
    k += ";";
  }
  return k;
}

Affine member_affine(const TypeMember &m, const Rat &r) {
  return {rpow(r, m.offset), m.orth, m.trans, m.offset};
}

} // namespace

size_t cylinder_cap() {
  if (const char *env = std::getenv("LIPFRAC_MAX_CYLINDERS")) {
    long v = std::atol(env);
    if (v > 0) return static_cast<size_t>(v);
  }
  return 500000;
}

std::vector<Cylinder> enumerate_cylinders(const IFS &ifs, long k, size_t cap) {
  if (ifs.kind != IfsKind::Geometric) fail(ErrorCode::InvalidInput, "cylinders need a geometric IFS");
  if (cap == 0) cap = cylinder_cap();
  std::vector<Cylinder> out;
  std::vector<Affine> maps;
  for (auto &m : ifs.maps) maps.push_back(Affine::of(m));
  std::vector<int> word;
  // Iterative DFS in lexicographic order.
  std::function<void(const Affine &)> rec = [&](const Affine &a) {
    if (a.lambda >= k) {
      if (out.size() >= cap)
        fail(ErrorCode::ExplosionGuard, "cylinder count at level " + std::to_string(k) + " exceeds the cap");
      out.push_back({word, a});
      return;
    }
    for (size_t i = 0; i < maps.size(); ++i) {
      word.push_back(static_cast<int>(i));
      rec(a.then(maps[i]));
      word.pop_back();
    }
  };
  rec(Affine::identity(ifs.dim));
  return out;
}

bool neighbourhood_connectivity(const AttractorGeometry &g) {
  std::vector<Affine> maps;
  for (auto &m : g.ifs.maps) maps.push_back(Affine::of(m));
  return cluster(g, maps, g.diam2, nullptr).size() == 1;
}

BlockDecomposition block_decomposition(const AttractorGeometry &g, long k, size_t cap) {
  BlockDecomposition d;
  d.level = k;
  d.cylinders = enumerate_cylinders(g.ifs, k, cap);
  d.thr2 = g.threshold2(k);
  std::vector<Affine> maps;
  for (auto &c : d.cylinders) maps.push_back(c.map);
  const long Lambda = g.ifs.max_lambda() - 1;
  for (auto &grp : cluster(g, maps, d.thr2, &d.compared_pairs)) {
    Block b;
    b.members = grp;
    b.poly.assign(Lambda + 1, 0);
    bool first = true;
    for (size_t i : grp) {
      long off = d.cylinders[i].map.lambda - k;
      if (off < 0 || off > Lambda) fail(ErrorCode::VerificationFailed, "cylinder exponent outside [k, k+Lambda]");
      b.poly[off] += 1;
      Box bx = g.image_box(d.cylinders[i].map);
      b.hull = first ? bx : box_union(b.hull, bx);
      first = false;
    }
    d.blocks.push_back(std::move(b));
  }
  return d;
}

void check_region(const AttractorGeometry &g, const OpenRegion &region) {
  if (!g.signed_perm) fail(ErrorCode::RegionNotInvariant, "region checks need signed-permutation maps");
  std::vector<std::vector<Box>> images;
  for (auto &m : g.ifs.maps) {
    AttractorGeometry tmp;
    std::vector<Box> imgs;
    for (auto &b : region.boxes) {
      tmp.hull = b;
      Box img = tmp.image_box(Affine::of(m));
      bool inside = false;
      for (auto &o : region.boxes) inside = inside || box_inside(img, o);
      if (!inside) fail(ErrorCode::RegionNotInvariant, "a map sends the region outside itself");
      imgs.push_back(img);
    }
    images.push_back(imgs);
  }
  auto open_disjoint = [](const Box &a, const Box &b) {
    for (size_t j = 0; j < a.lo.size(); ++j)
      if (a.hi[j] <= b.lo[j] || b.hi[j] <= a.lo[j]) return true;
    return false;
  };
  for (size_t i = 0; i < images.size(); ++i)
    for (size_t j = i + 1; j < images.size(); ++j)
      for (auto &a : images[i])
        for (auto &b : images[j])
          if (!open_disjoint(a, b)) fail(ErrorCode::RegionNotInvariant, "images of the region overlap");
  bool meets = false;
  for (auto &w : g.witnesses)
    for (auto &b : region.boxes) meets = meets || box_strictly_inside({w, w}, b);
  if (!meets) fail(ErrorCode::RegionNotInvariant, "the region does not meet the attractor");
}

InteriorSummary classify_interior(BlockDecomposition &d, const AttractorGeometry &g, const OpenRegion &region) {
  InteriorSummary s;
  const Interval &t2 = d.thr2;
  for (auto &b : d.blocks) {
    b.interior = false;
    for (auto &o : region.boxes) {
      bool ok = true;
      for (size_t j = 0; j < b.hull.lo.size() && ok; ++j)
        for (Rat gap : {Rat(b.hull.lo[j] - o.lo[j]), Rat(o.hi[j] - b.hull.hi[j])}) {
          if (gap >= 0 && gap * gap >= t2.hi) continue;
          if (gap < 0 || gap * gap < t2.lo || !g.exact_hull) {
            ok = false;
            break;
          }
          fail(ErrorCode::PredicateUnresolved, "interior test is a tie within the diameter enclosure");
        }
      if (ok) {
        b.interior = true;
        break;
      }
    }
    if (b.interior)
      ++s.interior[b.poly];
    else
      ++s.boundary;
  }
  return s;
}

FieldElem poly_at_p(const IntVec &poly, const SpecPtr &spec) {
  FieldElem p = FieldElem::p(spec), acc = FieldElem::from_rat(spec, 0), pw = FieldElem::from_rat(spec, 1);
  for (auto &c : poly) {
    if (c != 0) acc = acc + pw * Rat(c);
    pw = pw * p;
  }
  return acc;
}

FieldElem block_measure_total(const BlockDecomposition &d, const SpecPtr &spec) {
  FieldElem acc = FieldElem::from_rat(spec, 0);
  for (auto &b : d.blocks) acc = acc + poly_at_p(b.poly, spec);
  return acc * FieldElem::p(spec).pow(d.level);
}

CountsTable block_counts(const AttractorGeometry &g, const OpenRegion &region, long k_max) {
  CountsTable t;
  const SpecPtr &spec = g.ifs.spec;
  PerronData pd = perron_matrix(spec);
  const long n = g.ifs.max_lambda();
  IntVec prev;
  Interval dE = diameter_interval(g);
  for (long k = 1; k <= k_max; ++k) {
    BlockDecomposition d = block_decomposition(g, k);
    LevelCounts lc;
    lc.k = k;
    lc.xi.assign(n, 0);
    for (auto &c : d.cylinders) lc.xi[c.map.lambda - k] += 1;
    IntVec expect = k == 1 ? IntVec(spec->relation.begin(), spec->relation.end()) : mat_vec(pd.xi_matrix, prev);
    expect.resize(n, 0);
    lc.recursion_ok = expect == lc.xi;
    prev = lc.xi;
    auto s = classify_interior(d, g, region);
    lc.blocks = static_cast<long>(d.blocks.size());
    lc.boundary = s.boundary;
    lc.interior = s.interior;
    Interval pk = ipow(spec->p_interval, static_cast<unsigned long>(k));
    lc.pk_zeta = pk * Interval(Rat(s.boundary), Rat(s.boundary));
    lc.normalization_ok = block_measure_total(d, spec) == FieldElem::from_rat(spec, 1);
    double T = to_double(dE.mid()) * std::pow(to_double(g.ifs.r), static_cast<double>(k));
    for (auto &b : d.blocks) {
      double diam = std::sqrt(to_double(box_maxdist2(b.hull, b.hull)));
      double w = std::max(diam / T, T / diam);
      lc.varpi = std::max(lc.varpi, w);
    }
    t.varpi = std::max(t.varpi, lc.varpi);
    t.levels.push_back(std::move(lc));
  }
  return t;
}

namespace {

// Children of a normalized block one level down.
struct ChildBlock {
  std::vector<TypeMember> members;
  RatVec base;
};

std::vector<ChildBlock> refine_type(const AttractorGeometry &g, const BlockType &t) {
  const Rat &r = g.ifs.r;
  std::vector<Affine> cyl;
  for (auto &m : t.members) {
    Affine a = member_affine(m, r);
    if (m.offset >= 1) {
      cyl.push_back(a);
      continue;
    }
    for (auto &s : g.ifs.maps) cyl.push_back(a.then(Affine::of(s)));
  }
  std::vector<ChildBlock> out;
  for (auto &grp : cluster(g, cyl, g.threshold2(1), nullptr)) {
    ChildBlock c;
    c.base = cyl[grp[0]].trans;
    for (size_t i : grp) c.base = std::min(c.base, cyl[i].trans);
    for (size_t i : grp) {
      RatVec tr = cyl[i].trans;
      for (size_t j = 0; j < tr.size(); ++j) tr[j] = (tr[j] - c.base[j]) / r;
      c.members.push_back({cyl[i].lambda - 1, cyl[i].orth, tr});
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

BlockType make_type(const AttractorGeometry &g, std::vector<TypeMember> ms, long depth) {
  BlockType t;
  t.members = std::move(ms);
  t.poly.assign(g.ifs.max_lambda(), 0);
  bool first = true;
  for (auto &m : t.members) {
    t.poly[m.offset] += 1;
    Box b = g.image_box(member_affine(m, g.ifs.r));
    t.hull = first ? b : box_union(t.hull, b);
    first = false;
  }
  t.depth = depth;
  t.key = type_key(t.members);
  return t;
}

// Relation of one region facet to a block: strictly inside, strictly outside, or an exact offset.
struct Facet {
  int flag; // 1 inside, -1 outside, 0 exact
  Rat value;
  bool operator<(const Facet &o) const {
    if (flag != o.flag) return flag < o.flag;
    return value < o.value;
  }
};

void classify_facets(std::vector<Facet> &fs, const Box &hull, size_t dim) {
  // Layout: box-major, then coordinate, then (lo, hi).
  for (size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].flag != 0) continue;
    size_t j = (i / 2) % dim;
    bool lo_side = i % 2 == 0;
    const Rat &f = fs[i].value;
    if (lo_side) {
      if (f < hull.lo[j]) fs[i] = {1, 0};
      else if (f > hull.hi[j]) fs[i] = {-1, 0};
    } else {
      if (f > hull.hi[j]) fs[i] = {1, 0};
      else if (f < hull.lo[j]) fs[i] = {-1, 0};
    }
  }
}

bool facets_inside(const std::vector<Facet> &fs, size_t dim) {
  const size_t per = 2 * dim;
  for (size_t b = 0; b * per < fs.size(); ++b) {
    bool all = true;
    for (size_t i = 0; i < per; ++i) all = all && fs[b * per + i].flag == 1;
    if (all) return true;
  }
  return false;
}

} // namespace

TypeGraph discover_types(const AttractorGeometry &g, const std::optional<OpenRegion> &region, long k_max,
                         size_t max_types) {
  TypeGraph tg;
  std::map<std::string, size_t> index;
  const int d = g.ifs.dim;
  auto root = make_type(g, {{0, identity_rat(d), RatVec(d, 0)}}, 0);
  index[root.key] = 0;
  tg.types.push_back(root);
  std::deque<size_t> queue = {0};
  tg.closed = true;
  while (!queue.empty()) {
    size_t cur = queue.front();
    queue.pop_front();
    long depth = tg.types[cur].depth;
    if (depth >= k_max) {
      tg.closed = false;
      break;
    }
    for (auto &ch : refine_type(g, tg.types[cur])) {
      std::string key = type_key(ch.members);
      auto it = index.find(key);
      size_t id;
      if (it == index.end()) {
        if (tg.types.size() >= max_types) {
          tg.closed = false;
          queue.clear();
          break;
        }
        id = tg.types.size();
        index[key] = id;
        tg.types.push_back(make_type(g, ch.members, depth + 1));
        queue.push_back(id);
      } else {
        id = it->second;
      }
      tg.edges.push_back({cur, id, ch.base});
    }
    tg.depth_explored = std::max(tg.depth_explored, depth + 1);
  }
  if (!region || !tg.closed) return tg;

  // Which types have an instance inside the region: explore (type, facet relations) states.
  std::vector<std::vector<size_t>> out_edges(tg.types.size());
  for (size_t e = 0; e < tg.edges.size(); ++e) out_edges[tg.edges[e].src].push_back(e);
  std::vector<Facet> init;
  for (auto &b : region->boxes)
    for (int j = 0; j < d; ++j) {
      init.push_back({0, b.lo[j]});
      init.push_back({0, b.hi[j]});
    }
  classify_facets(init, tg.types[0].hull, d);
  std::set<std::pair<size_t, std::vector<Facet>>> seen;
  std::deque<std::pair<size_t, std::vector<Facet>>> states = {{0, init}};
  seen.insert(states.front());
  std::set<size_t> inside;
  const size_t max_states = 20000;
  bool exhausted = true;
  while (!states.empty()) {
    auto [t, fs] = states.front();
    states.pop_front();
    if (facets_inside(fs, d)) {
      inside.insert(t);
      continue;
    }
    for (size_t e : out_edges[t]) {
      const TypeEdge &edge = tg.edges[e];
      std::vector<Facet> nf = fs;
      for (size_t i = 0; i < nf.size(); ++i)
        if (nf[i].flag == 0) nf[i].value = (nf[i].value - edge.base[(i / 2) % d]) / g.ifs.r;
      classify_facets(nf, tg.types[edge.dst].hull, d);
      std::pair<size_t, std::vector<Facet>> st{edge.dst, nf};
      if (seen.count(st)) continue;
      if (seen.size() >= max_states) {
        exhausted = false;
        continue;
      }
      seen.insert(st);
      states.push_back(std::move(st));
    }
  }
  tg.boundary_states = static_cast<long>(seen.size());
  // Descendants of an inside instance are inside too.
  std::deque<size_t> q(inside.begin(), inside.end());
  while (!q.empty()) {
    size_t t = q.front();
    q.pop_front();
    for (size_t e : out_edges[t])
      if (inside.insert(tg.edges[e].dst).second) q.push_back(tg.edges[e].dst);
  }
  tg.v_o.assign(inside.begin(), inside.end());
  tg.v_o_exact = exhausted && g.exact_hull;
  return tg;
}

} // namespace lipfrac
