// One PASS/FAIL line per acceptance criterion. Every threshold used is pinned below.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "lipfrac/classgroup.hpp"
#include "lipfrac/errors.hpp"
#include "lipfrac/json_io.hpp"
#include "lipfrac/perron.hpp"
#include "lipfrac/positivity.hpp"

using namespace lipfrac;

namespace {

constexpr double kDavidSemmesSeconds = 10.0;
constexpr double kNpiSeconds = 60.0;
constexpr double kClassNumberSeconds = 1.0;
constexpr long kNpiMaxLevel = 4;
constexpr long kZPlusBound = 10;
constexpr long kFamilySize = 5;
constexpr size_t kMaxCylinders = 100000;
constexpr long kPerronLevels = 60;
constexpr long kMinSampledPairs = 1000;

std::string data(const std::string &name) { return std::string(LIPFRAC_DATA_DIR) + "/" + name; }
IFS load(const std::string &name) { return *io::load_system(data(name)).ifs; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Collects failed sub-checks with a short reason.
struct Check {
  std::vector<std::string> failures;
  std::ostringstream notes;
  void expect(bool ok, const std::string &what) {
    if (!ok) failures.push_back(what);
  }
};

int failed_criteria = 0;

void criterion(int id, const std::string &title, const std::function<void(Check &)> &body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception &e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double t = seconds_since(t0);
  bool pass = c.failures.empty();
  if (!pass) ++failed_criteria;
  std::printf("[%s] %d. %s (%.2f s)%s\n", pass ? "PASS" : "FAIL", id, title.c_str(), t, c.notes.str().c_str());
  for (auto &f : c.failures) std::printf("       - %s\n", f.c_str());
  std::fflush(stdout);
}

FieldElem num(const SpecPtr &s, long v) { return FieldElem::from_rat(s, v); }

SpecPtr sqrt_spec(long D) {
  // beta = k + sqrt D (D = 2, 3 mod 4) or k + (1 + sqrt D)/2 (D = 1 mod 4), beta > 1.
  long k = 1;
  while (k * k <= D) ++k;
  if (D % 4 == 1) {
    // x^2 - (2k+1) x + (k^2 + k - (D-1)/4)
    long tr = 2 * k + 1, nm = k * k + k - (D - 1) / 4;
    Rat lo = Rat(tr, 2), hi = Rat(tr + 1);
    return spec_from_beta_poly({Int(nm), Int(-tr), Int(1)}, Interval(lo, hi));
  }
  return spec_from_beta_poly({Int(k * k - D), Int(-2 * k), Int(1)}, Interval(Rat(k), Rat(2 * k)));
}

std::vector<Rat> infssc_member(long n) {
  std::vector<Rat> r(ipow(3, n - 1).get_ui(), Rat(1, ipow(9, n)));
  r.push_back(Rat(4, 9));
  return r;
}

} // namespace

int main() {
  std::printf("lipfrac acceptance\n");

  criterion(1, "{1,3,5} vs {1,4,5}: equiv returns Equivalent within 10 s", [](Check &c) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v = lipschitz_equivalent(load("135.json"), load("145.json"));
    double t = seconds_since(t0);
    c.expect(v.outcome == Outcome::Equivalent, std::string("outcome ") + outcome_name(v.outcome));
    c.expect(t < kDavidSemmesSeconds, "took " + std::to_string(t) + " s");
  });

  criterion(2, "seven-map system: ideal (2, 1+p) exact, non-principal, not equivalent to its SSC sibling", [](Check &c) {
    auto t0 = std::chrono::steady_clock::now();
    IFS npi = load("npi.json");
    const SpecPtr &s = npi.spec;
    auto res = ideal_from_blocks(attractor_extent(npi), *npi.region, kNpiMaxLevel);
    IdealLattice want = saturate(ideal_hnf({num(s, 2), num(s, 1) + FieldElem::p(s)}, s));
    c.expect(res.ideal == want, "ideal " + res.ideal.str() + " != " + want.str());
    c.expect(res.status == IdealStatus::Exact, "status is not Exact");
    c.expect(is_principal(res.ideal) == std::optional<bool>(false), "ideal reported principal");
    Verdict v = lipschitz_equivalent(npi, load("npi_ssc.json"));
    c.expect(v.outcome == Outcome::NotEquivalent, std::string("outcome ") + outcome_name(v.outcome));
    double t = seconds_since(t0);
    c.expect(t < kNpiSeconds, "took " + std::to_string(t) + " s");
  });

  criterion(3, "graph-directed presentation: measure vector (1, 1+p, 2) and ideal (1+p, 2)", [](Check &c) {
    GDGraph gd = io::parse_graph(io::read_json_file(data("gdid_graph.json")));
    const SpecPtr &s = gd.spec;
    FieldElem p = FieldElem::p(s);
    auto mv = measure_vector(gd);
    c.expect(mv.size() == 3 && mv[0] == num(s, 1) && mv[1] == num(s, 1) + p && mv[2] == num(s, 2),
             "measure vector differs");
    IdealLattice I = ideal_from_graph(gd, *gd.v_o);
    c.expect(I == saturate(ideal_hnf({num(s, 1) + p, num(s, 2)}, s)), "graph ideal " + I.str());
    c.expect(I == ideal_of_ifs(load("npi.json"), kNpiMaxLevel).ideal, "graph ideal differs from the block route");
  });

  criterion(4, "class numbers of quadratic orders and localizations", [](Check &c) {
    for (long D : {2, 3, 5, 6, 7, 11, 13, 10, 15, 26}) {
      auto t0 = std::chrono::steady_clock::now();
      auto s = sqrt_spec(D);
      long want = (D == 10 || D == 15 || D == 26) ? 2 : 1;
      long h = class_number_order(s);
      c.expect(h == want, "h(D=" + std::to_string(D) + ") = " + std::to_string(h));
      c.expect(seconds_since(t0) < kClassNumberSeconds, "D=" + std::to_string(D) + " too slow");
    }
    auto t0 = std::chrono::steady_clock::now();
    auto clane = spec_from_relation({12, 4});
    c.expect(ring_description(clane) == "Z[√10, 1/2]", "ring " + ring_description(clane));
    c.expect(class_number_localized(clane) == 1, "h(Z[sqrt 10, 1/2]) != 1");
    c.expect(seconds_since(t0) < kClassNumberSeconds, "localized class number too slow");
    for (auto name : {"npi.json", "golden_a.json", "ssc1_a.json", "ssc1_b.json", "ideal.json"}) {
      auto s = load(name).spec;
      if (s->degree != 2) continue;
      c.expect(class_number_localized(s) <= class_number_order(s), std::string("h(Z[p]) > h(Z[beta]) for ") + name);
    }
    c.expect(class_number_localized(spec_from_beta_poly({-1, -14, 1}, Interval(Rat(14), Rat(15)))) <=
                 class_number_order(spec_from_beta_poly({-1, -14, 1}, Interval(Rat(14), Rat(15)))),
             "h(Z[p]) > h(Z[beta]) for Z[5 sqrt 2]");
  });

  criterion(5, "prescribed ideals (1) and (2, sqrt 10) round-trip exactly", [](Check &c) {
    IFS npi = load("npi.json");
    const SpecPtr &s = npi.spec;
    FieldElem r10 = FieldElem::p(s) + num(s, 3);
    for (auto gens : {std::vector<FieldElem>{num(s, 1)}, std::vector<FieldElem>{num(s, 2), r10}}) {
      IdealLattice want = saturate(ideal_hnf(gens, s));
      auto con = construct_ifs_with_ideal(s, Rat(1, 10), gens);
      c.expect(ideal_from_graph(con.graph, *con.graph.v_o) == want, "graph ideal differs for " + want.str());
      auto again = ideal_of_ifs(con.ifs, kNpiMaxLevel);
      c.expect(again.ideal == want, "recomputed ideal " + again.ideal.str() + " != " + want.str());
      if (gens.size() == 2) {
        c.expect(con.ell == 1, "ell = " + std::to_string(con.ell));
        c.expect(con.dim == 2, "d = " + std::to_string(con.dim));
        c.expect(con.ifs.maps.size() == 7, "maps = " + std::to_string(con.ifs.maps.size()));
      }
    }
  });

  criterion(6, "golden-ratio pair (r^4, r^3, r) vs (r^3, r^2, r^2): Equivalent", [](Check &c) {
    Verdict v = lipschitz_equivalent(load("golden_a.json"), load("golden_b.json"));
    c.expect(v.outcome == Outcome::Equivalent, std::string("outcome ") + outcome_name(v.outcome));
  });

  criterion(7, "separated pair with rings Z[√3, 1/2] and Z[3√3, 1/2]: NotEquivalent", [](Check &c) {
    IFS a = load("ssc1_a.json"), b = load("ssc1_b.json");
    Verdict v = ssc_equivalent(a, b);
    c.expect(v.outcome == Outcome::NotEquivalent, std::string("outcome ") + outcome_name(v.outcome));
    c.expect(v.get("ring_S") == "Z[√3, 1/2]" && v.get("ring_T") == "Z[3√3, 1/2]",
             "rings " + v.get("ring_S") + " / " + v.get("ring_T"));
    c.expect(same_ring(a.spec, b.spec) == std::optional<bool>(false), "exact ring membership disagrees");
    auto pa = embed(FieldElem::p(a.spec), b.spec);
    c.expect(pa && !member_of_Zp(*pa), "p_S should lie outside Z[p_T]");
    c.expect(lipschitz_equivalent(a, b).outcome == Outcome::NotEquivalent, "general route disagrees");
  });

  criterion(8, "non-commensurable family: equal dimensions, semigroups, Z+ rings; distinct subdimensions", [](Check &c) {
    auto fam = infinite_family({Rat(1, 9), Rat(4, 9)}, 0, {2, 2, 2}, kFamilySize);
    RatioSemigroup G({Rat(1, 9)});
    std::vector<Rat> seen;
    for (long n = 1; n <= kFamilySize; ++n) {
      auto Sn = fam[n - 1], want = infssc_member(n);
      std::sort(Sn.begin(), Sn.end());
      std::sort(want.begin(), want.end());
      c.expect(Sn == want, "member " + std::to_string(n) + " differs from the construction");
      c.expect(exact_dimension(Sn) == std::optional<Rat>(Rat(1, 2)), "dim of member " + std::to_string(n));
      auto sd = subdimension(Sn, G);
      Rat f(n - 1, 2 * n);
      f.canonicalize();
      c.expect(sd.exact && *sd.exact == f, "subdimension of member " + std::to_string(n));
      if (sd.exact) seen.push_back(*sd.exact);
      for (long m = 1; m <= kFamilySize; ++m) {
        c.expect(sgp_equivalent(Sn, fam[m - 1]).equivalent, "semigroups " + std::to_string(n) + "," + std::to_string(m));
        auto z = zplus_equal(Sn, fam[m - 1], kZPlusBound);
        c.expect(z.outcome == ZPlusOutcome::EqualUpToBound && z.common == "Z+[1/3]",
                 "Z+ " + std::to_string(n) + "," + std::to_string(m));
      }
    }
    std::sort(seen.begin(), seen.end());
    c.expect(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "subdimensions repeat");
  });

  criterion(9, "property suites on all fixtures", [](Check &c) {
    std::vector<std::string> geometric = {"135.json", "145.json", "npi.json", "cantor.json", "ideal.json"};
    // Cylinder counts, normalization, diameter bounds, p^k zeta(k).
    for (auto &name : geometric) {
      IFS f = load(name);
      auto g = attractor_extent(f);
      long kmax = 1;
      // N^k cylinders at level k; stay within the pinned cap.
      size_t n = f.maps.size(), count = n;
      while ((count *= n) <= kMaxCylinders) ++kmax;
      auto table = block_counts(g, *f.region, kmax);
      for (auto &L : table.levels) {
        c.expect(L.recursion_ok, name + ": xi recursion at level " + std::to_string(L.k));
        c.expect(L.normalization_ok, name + ": normalization at level " + std::to_string(L.k));
        c.expect(L.varpi <= table.varpi, name + ": diameter bound at level " + std::to_string(L.k));
      }
      for (size_t i = 2; i + 1 < table.levels.size(); ++i)
        c.expect(table.levels[i + 1].pk_zeta.lo <= table.levels[i].pk_zeta.hi,
                 name + ": p^k zeta(k) increases after level " + std::to_string(table.levels[i].k));
    }
    // Perron identity and monotone convergence.
    for (auto &name : {"npi.json", "golden_a.json", "golden_b.json", "ssc1_a.json"}) {
      auto s = load(name).spec;
      PerronData pd = perron_matrix(s);
      c.expect(perron_identity_holds(pd, s), std::string(name) + ": Perron identity");
      IntVec a(pd.xi_matrix.size(), 1);
      auto err = perron_convergence_errors(pd, s, a, kPerronLevels);
      for (size_t k = 1; k < err.size(); ++k)
        c.expect(err[k].hi <= err[k - 1].hi, std::string(name) + ": error grows at k = " + std::to_string(k));
    }
    // Ideal lattice properties.
    auto s = load("npi.json").spec;
    FieldElem p = FieldElem::p(s);
    std::vector<IdealLattice> fx;
    for (long a : {1, 2, 3, 5})
      for (long b : {0, 1, 2}) fx.push_back(ideal_hnf({num(s, a), num(s, b) + p}, s));
    for (auto &I : fx) {
      c.expect(saturate(I) == I && saturate(saturate(I)) == saturate(I), "saturation not idempotent");
      c.expect(ideal_hnf(ideal_generators(I), s) == I, "HNF not canonical");
      long l = find_unipotent_level(I);
      c.expect(ideal_contains(I, num(s, 1) - p.pow(l)), "1 - p^l outside the ideal");
      for (auto &J : fx) {
        auto ij = same_class(I, J);
        c.expect(ij.has_value() && ij == same_class(J, I), "same_class not symmetric");
        for (auto &K : fx)
          if (ij && *ij && *same_class(J, K)) c.expect(*same_class(I, K), "same_class not transitive");
      }
    }
    for (long a = 1; a <= 4; ++a)
      for (long b = -8; b <= 8; ++b) {
        FieldElem x = num(s, a) + p * Rat(b);
        if (!x.positive()) continue;
        c.expect(eval_p_poly(s, positive_representation(x)) == x, "positive representation of " + x.str());
      }
    // Suitable plans and witnesses.
    IFS npi = load("npi.json");
    auto g = attractor_extent(npi);
    auto d1 = block_decomposition(g, 1);
    int plans = 0;
    for (size_t b = 0; b < d1.blocks.size(); ++b) {
      if (poly_at_p(d1.blocks[b].poly, s) != num(s, 2)) continue;
      std::vector<FieldElem> targets = {num(s, 1) + p, num(s, 1) - p};
      auto plan = suitable_decomposition(g, 1, {b}, targets);
      ++plans;
      for (size_t i = 0; i < targets.size(); ++i)
        c.expect(poly_at_p(plan.part_polys[i], s) * p.pow(plan.level + plan.order) == targets[i] * p,
                 "suitable part misses its target");
    }
    c.expect(plans > 0, "no block with P = 2 at level 1");
    struct Pair {
      const char *a, *b;
      long depth;
    };
    for (auto pr : {Pair{"135.json", "145.json", 5}, Pair{"npi.json", "ideal.json", 4}}) {
      auto w = cylinder_witness(load(pr.a), load(pr.b), pr.depth);
      std::string tag = std::string(pr.a) + " vs " + pr.b;
      c.expect(w.measures_exact, tag + ": measures");
      c.expect(w.sampled_pairs >= kMinSampledPairs, tag + ": only " + std::to_string(w.sampled_pairs) + " pairs");
      c.expect(w.max_distortion <= w.bound, tag + ": distortion above L");
    }
  });

  std::printf("%s: %d criteria failed\n", failed_criteria ? "FAIL" : "PASS", failed_criteria);
  return failed_criteria ? 1 : 0;
}
