#pragma once

#include "lipfrac/ifs.hpp"

namespace lipfrac::fixtures {

inline Similarity sim1(Rat ratio, long sign, Rat t) {
  ratio.canonicalize();
  t.canonicalize();
  return {ratio, {{Rat(sign)}}, {t}, 0};
}

// x -> x/5 + {0, 2/5, 4/5}, or with digits {0, 3, 4} for the companion set.
inline IFS digits_ifs(std::vector<long> digits) {
  std::vector<Similarity> maps;
  for (long d : digits) maps.push_back(sim1(Rat(1, 5), 1, Rat(d, 5)));
  return make_ifs(1, maps, OpenRegion{{Box{{Rat(0)}, {Rat(1)}}}});
}
inline IFS ifs_135() { return digits_ifs({0, 2, 4}); }
inline IFS ifs_145() { return digits_ifs({0, 3, 4}); }

// Seven maps with r = 1/10 and mixed orientations; p^2 + 6p = 1.
inline IFS npi_ifs() {
  Rat r(1, 10);
  return make_ifs(1,
                  {sim1(r, 1, 0), sim1(r * r, -1, 3 * r), sim1(r, 1, 3 * r), sim1(r, -1, 6 * r), sim1(r, 1, 6 * r),
                   sim1(r, -1, 9 * r), sim1(r, 1, 9 * r)},
                  OpenRegion{{Box{{Rat(0)}, {Rat(1)}}}});
}

// Same ratios, every copy separated: r^2 first, then six copies of ratio r.
inline IFS npi_ssc_ifs() {
  Rat r(1, 10);
  std::vector<Similarity> maps = {sim1(r * r, 1, 0)};
  for (int i = 0; i < 6; ++i) maps.push_back(sim1(r, 1, Rat(1 + 3 * i, 20) + Rat(1, 40)));
  return make_ifs(1, maps, OpenRegion{{Box{{Rat(0)}, {Rat(1)}}}});
}

} // namespace lipfrac::fixtures

#include "lipfrac/graph.hpp"

namespace lipfrac::fixtures {

// E0 = E, E1 = -rE u E, E2 = -E u E for the seven-map system above.
inline GDGraph gdid_graph() {
  Rat r(1, 10);
  GDGraph gd;
  gd.r = r;
  gd.spec = npi_ifs().spec;
  gd.names = {"E0", "E1", "E2"};
  RatMat pos = {{Rat(1)}}, neg = {{Rat(-1)}};
  auto root_pieces = [&](size_t src, const RatMat &o, Rat sign) {
    gd.edges.push_back({src, 0, 1, o, {Rat(0)}});
    gd.edges.push_back({src, 1, 1, o, {sign * 3 * r}});
    gd.edges.push_back({src, 2, 1, o, {sign * 6 * r}});
    gd.edges.push_back({src, 2, 1, o, {sign * 9 * r}});
  };
  root_pieces(0, pos, 1);
  gd.edges.push_back({1, 0, 1, neg, {Rat(0)}});
  root_pieces(1, pos, 1);
  root_pieces(2, neg, -1);
  root_pieces(2, pos, 1);
  gd.v_o = std::vector<size_t>{1, 2};
  return gd;
}

} // namespace lipfrac::fixtures
