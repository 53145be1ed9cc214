#include "lipfrac/graph.hpp"

#include <set>

#include "lipfrac/errors.hpp"

namespace lipfrac {

GDGraph graph_from_types(const TypeGraph &tg, const IFS &ifs) {
  GDGraph gd;
  gd.dim = ifs.dim;
  gd.r = ifs.r;
  gd.spec = ifs.spec;
  for (size_t i = 0; i < tg.types.size(); ++i) gd.names.push_back("T" + std::to_string(i));
  for (auto &e : tg.edges) gd.edges.push_back({e.src, e.dst, 1, identity_rat(ifs.dim), e.base});
  if (!tg.v_o.empty() || tg.v_o_exact) gd.v_o = tg.v_o;
  return gd;
}

std::vector<FieldElem> measure_vector(const GDGraph &gd) {
  const SpecPtr &s = gd.spec;
  const size_t n = gd.vertices();
  if (n == 0) fail(ErrorCode::EmptyInput, "graph has no vertices");
  FieldElem zero = FieldElem::from_rat(s, 0), one = FieldElem::from_rat(s, 1), p = FieldElem::p(s);
  for (auto &e : gd.edges)
    if (e.src >= n || e.dst >= n || e.lambda < 1) fail(ErrorCode::InvalidInput, "bad graph-directed edge");
  std::vector<FieldElem> v(n, zero);
  v[0] = one;
  if (n == 1) return v;
  // Unknowns v_1..v_{n-1}, right-hand side in column m. Row i-1 is v_i = sum p^lambda v_dst;
  // the last row is the root equation. Vertices that never lead back to the root only get their scale from it.
  const size_t m = n - 1;
  std::vector<std::vector<FieldElem>> a(m + 1, std::vector<FieldElem>(m + 1, zero));
  for (size_t i = 0; i < m; ++i) a[i][i] = one;
  a[m][m] = one;
  for (auto &e : gd.edges) {
    FieldElem w = p.pow(e.lambda);
    if (e.src != 0 && e.dst != 0)
      a[e.src - 1][e.dst - 1] = a[e.src - 1][e.dst - 1] - w;
    else if (e.src != 0)
      a[e.src - 1][m] = a[e.src - 1][m] + w;
    else if (e.dst != 0)
      a[m][e.dst - 1] = a[m][e.dst - 1] + w;
    else
      a[m][m] = a[m][m] - w;
  }
  for (size_t c = 0; c < m; ++c) {
    size_t piv = c;
    while (piv <= m && a[piv][c].is_zero()) ++piv;
    if (piv > m) fail(ErrorCode::SingularSystem, "measure system of the graph is singular");
    std::swap(a[piv], a[c]);
    FieldElem inv = a[c][c].inverse();
    for (size_t j = c; j <= m; ++j) a[c][j] = a[c][j] * inv;
    for (size_t i = 0; i <= m; ++i) {
      if (i == c || a[i][c].is_zero()) continue;
      FieldElem f = a[i][c];
      for (size_t j = c; j <= m; ++j) a[i][j] = a[i][j] - f * a[c][j];
    }
  }
  if (!a[m][m].is_zero()) fail(ErrorCode::VerificationFailed, "measure equations of the graph are inconsistent");
  for (size_t i = 0; i < m; ++i) v[i + 1] = a[i][m];
  for (size_t i = 0; i < n; ++i)
    if (!member_of_Zp(v[i])) fail(ErrorCode::NotMember, "measure ratio of " + gd.names[i] + " is not in Z[p]");
  return v;
}

IdealLattice ideal_from_graph(const GDGraph &gd, const std::vector<size_t> &v_o) {
  if (v_o.empty()) fail(ErrorCode::EmptyInput, "V_O is empty");
  auto v = measure_vector(gd);
  std::vector<FieldElem> gens;
  for (size_t i : v_o) {
    if (i >= v.size()) fail(ErrorCode::InvalidInput, "V_O names a missing vertex");
    gens.push_back(v[i]);
  }
  return ideal_hnf(gens, gd.spec);
}

const char *status_name(IdealStatus s) { return s == IdealStatus::Exact ? "Exact" : "LowerBound"; }

IfsIdeal ideal_from_blocks(const AttractorGeometry &g, const OpenRegion &region, long k_max, long type_depth) {
  check_region(g, region);
  const SpecPtr &s = g.ifs.spec;
  IfsIdeal out;
  out.route = "blocks";
  std::set<IntVec> seen;
  for (long k = 1; k <= k_max; ++k) {
    auto d = block_decomposition(g, k);
    classify_interior(d, g, region);
    for (auto &b : d.blocks)
      if (b.interior && seen.insert(b.poly).second) out.generators.push_back(poly_at_p(b.poly, s));
    out.levels = k;
  }
  if (out.generators.empty()) out.generators.push_back(FieldElem::from_rat(s, 0));
  bool have_lower = !out.generators[0].is_zero();
  out.types = discover_types(g, region, type_depth);
  if (out.types.closed && out.types.v_o_exact && !out.types.v_o.empty()) {
    std::vector<FieldElem> exact;
    for (size_t t : out.types.v_o) exact.push_back(poly_at_p(out.types.types[t].poly, s));
    IdealLattice I = ideal_hnf(exact, s);
    for (auto &x : out.generators)
      if (!x.is_zero() && !ideal_contains(I, x))
        fail(ErrorCode::VerificationFailed, "an interior block lies outside the type ideal");
    // Second route: solve the measure system of the type graph.
    try {
      GDGraph gd = graph_from_types(out.types, g.ifs);
      auto v = measure_vector(gd);
      for (size_t t = 0; t < v.size(); ++t)
        if (v[t] != poly_at_p(out.types.types[t].poly, s))
          fail(ErrorCode::VerificationFailed, "measure vector disagrees with type polynomials");
      if (ideal_from_graph(gd, out.types.v_o) != I)
        fail(ErrorCode::VerificationFailed, "graph route and block route give different ideals");
      out.graph_route_checked = true;
    } catch (const Error &e) {
      if (e.code() != ErrorCode::SingularSystem) throw;
    }
    out.ideal = I;
    out.status = IdealStatus::Exact;
    out.generators = exact;
    return out;
  }
  if (!have_lower) fail(ErrorCode::ZeroIdeal, "no interior blocks found up to level " + std::to_string(k_max));
  out.ideal = ideal_hnf(out.generators, s);
  out.status = IdealStatus::LowerBound;
  return out;
}

std::optional<IdealLattice> cosc_orthogonal_fast_path(const AttractorGeometry &g, const OpenRegion &region) {
  if (region.boxes.size() != 1) return std::nullopt;
  const RatMat &o = g.ifs.maps[0].orth;
  for (auto &m : g.ifs.maps)
    if (m.orth != o) return std::nullopt;
  try {
    check_region(g, region);
  } catch (const Error &) {
    return std::nullopt;
  }
  return whole_ring(g.ifs.spec);
}

IfsIdeal ideal_of_ifs(const IFS &ifs, long k_max, long type_depth) {
  IfsIdeal out;
  if (ifs.kind == IfsKind::Abstract) {
    out.ideal = whole_ring(ifs.spec);
    out.status = IdealStatus::Exact;
    out.route = "ssc";
    return out;
  }
  if (!ifs.region) fail(ErrorCode::InvalidInput, "a geometric system needs an open region");
  auto g = attractor_extent(ifs);
  if (auto I = cosc_orthogonal_fast_path(g, *ifs.region)) {
    out.ideal = *I;
    out.status = IdealStatus::Exact;
    out.route = "cosc";
    return out;
  }
  return ideal_from_blocks(g, *ifs.region, k_max, type_depth);
}

} // namespace lipfrac
