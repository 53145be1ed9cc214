// Command-line front end. Exit codes: 0 equivalent/success, 1 not equivalent,
// 2 unknown, 3 input error, 4 internal verification failure.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "lipfrac/classgroup.hpp"
#include "lipfrac/errors.hpp"
#include "lipfrac/json_io.hpp"
#include "lipfrac/positivity.hpp"
#include "lipfrac/svg.hpp"

using namespace lipfrac;
using io::Json;

namespace {

struct Globals {
  bool json = false;
  long max_level = 3;
  long depth = 3;
  std::string precision = "1/1000000000000";
  std::string open_set;
  std::string graph;
  bool deterministic = false; // reserved: nothing here draws random numbers
};

int exit_for(Outcome o) {
  switch (o) {
  case Outcome::Equivalent: return 0;
  case Outcome::NotEquivalent: return 1;
  default: return 2;
  }
}

void emit(const Globals &g, const Json &j, const std::string &text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

IFS load_ifs(const Globals &g, const std::string &path) {
  auto in = io::load_system(path);
  if (!in.ifs) fail(ErrorCode::NonCommensurable, path + ": ratios are not commensurable; use `noncomm`");
  IFS ifs = *in.ifs;
  if (!g.open_set.empty()) {
    Json r = io::read_json_file(g.open_set);
    Json wrapper = io::emit_ifs(ifs);
    wrapper["region"] = r.contains("region") ? r.at("region") : r;
    ifs = io::parse_ifs(wrapper);
  }
  return ifs;
}

std::string ideal_text(const IdealLattice &I) {
  std::string s;
  for (auto &x : ideal_generators(I)) s += (s.empty() ? "" : ", ") + x.str();
  return "(" + s + ")";
}

// Positive elements as polynomials in p, others in beta.
std::string p_text(const FieldElem &x) {
  if (!x.positive()) return x.str();
  IntVec c = positive_representation(x);
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    s += s.empty() ? "" : " + ";
    if (i == 0 || c[i] != 1) s += c[i].get_str();
    if (i >= 1) s += "p";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

SpecPtr relation_spec(const std::string &text) { return spec_from_relation(io::parse_relation_text(text), false); }

std::string ratio_list(const std::vector<Rat> &r) {
  std::string s;
  for (size_t i = 0; i < r.size(); ++i) s += (i ? ", " : "") + to_string(r[i]);
  return s;
}

int cmd_analyze(const Globals &g, const std::string &path) {
  auto in = io::load_system(path);
  Rat prec = parse_rational(g.precision);
  Json j;
  std::ostringstream t;
  j["ratios"] = Json::array();
  for (auto &r : in.ratios) j["ratios"].push_back(to_string(r));
  if (!in.ifs) {
    Interval d = dimension_enclosure(in.ratios, prec);
    auto exact = exact_dimension(in.ratios);
    j["commensurable"] = false;
    j["dimension"] = exact ? Json(to_string(*exact)) : Json::array({to_string(d.lo), to_string(d.hi)});
    t << "ratios: " << ratio_list(in.ratios) << "\n"
      << "NonCommensurable: no common ratio root; the algebraic pipeline does not apply (see `noncomm`)\n"
      << "dimension: " << (exact ? to_string(*exact) : "[" + to_string(d.lo) + ", " + to_string(d.hi) + "]") << "\n";
    emit(g, j, t.str());
    return 0;
  }
  const IFS &f = *in.ifs;
  Interval d = dimension_enclosure(f, prec);
  j["commensurable"] = true;
  j["ratio_root"] = to_string(f.r);
  j["exponents"] = f.lambdas;
  j["relation"] = f.spec->relation_str();
  j["p_min_poly"] = int_poly_str(f.spec->p_min_poly, "p");
  j["beta_min_poly"] = int_poly_str(f.spec->beta_min_poly, "b");
  j["ring"] = ring_description(f.spec);
  j["dimension"] = Json::array({to_string(d.lo), to_string(d.hi)});
  t << "ratio root r = " << to_string(f.r) << "\n"
    << "exponents: ";
  for (size_t i = 0; i < f.lambdas.size(); ++i) t << (i ? ", " : "") << f.lambdas[i];
  t << "\nrelation: " << f.spec->relation_str() << "\n"
    << "p minimal polynomial: " << int_poly_str(f.spec->p_min_poly, "p") << "\n"
    << "beta minimal polynomial: " << int_poly_str(f.spec->beta_min_poly, "b") << "\n"
    << "Z[p] = " << ring_description(f.spec) << "\n"
    << "dimension in [" << to_double(d.lo) << ", " << to_double(d.hi) << "]\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_blocks(const Globals &g, const std::string &path) {
  IFS f = load_ifs(g, path);
  auto geo = attractor_extent(f);
  Json levels = Json::array();
  std::ostringstream t;
  t << "|E|^2 in [" << to_double(geo.diam2.lo) << ", " << to_double(geo.diam2.hi) << "]\n";
  if (f.region) {
    auto table = block_counts(geo, *f.region, g.max_level);
    for (auto &L : table.levels) {
      Json lj{{"k", L.k}, {"xi", Json::array()}, {"recursion_ok", L.recursion_ok}, {"blocks", L.blocks},
              {"boundary", L.boundary}, {"normalization_ok", L.normalization_ok}};
      for (auto &x : L.xi) lj["xi"].push_back(x.get_str());
      Json inter = Json::array();
      std::string it;
      for (auto &[poly, n] : L.interior) {
        inter.push_back(Json{{"poly", int_poly_str(poly, "t")}, {"count", n}});
        it += " " + std::to_string(n) + "x(" + int_poly_str(poly, "t") + ")";
      }
      lj["interior"] = inter;
      levels.push_back(lj);
      t << "level " << L.k << ": " << L.blocks << " blocks, boundary " << L.boundary << ", interior" << it
        << (L.recursion_ok ? "" : " [xi recursion FAILED]") << (L.normalization_ok ? "" : " [normalization FAILED]")
        << "\n";
    }
    t << "diameter ratio bound varpi = " << table.varpi << "\n";
    emit(g, Json{{"levels", levels}, {"varpi", table.varpi}}, t.str());
    return 0;
  }
  for (long k = 1; k <= g.max_level; ++k) {
    auto d = block_decomposition(geo, k);
    Json lj{{"k", k}, {"cylinders", d.cylinders.size()}, {"blocks", Json::array()}};
    t << "level " << k << ": " << d.cylinders.size() << " cylinders, " << d.blocks.size() << " blocks\n";
    for (auto &b : d.blocks) lj["blocks"].push_back(int_poly_str(b.poly, "t"));
    levels.push_back(lj);
  }
  emit(g, Json{{"levels", levels}}, t.str());
  return 0;
}

int cmd_ideal(const Globals &g, const std::string &path) {
  if (!g.graph.empty()) {
    GDGraph gd = io::parse_graph(io::read_json_file(g.graph));
    if (!gd.v_o) fail(ErrorCode::InvalidInput, "graph file must list v_o");
    auto mv = measure_vector(gd);
    auto I = ideal_from_graph(gd, *gd.v_o);
    Json j{{"measure_vector", Json::array()}, {"ideal", io::emit_ideal(I)}};
    std::ostringstream t;
    t << "measure vector:";
    for (auto &x : mv) {
      j["measure_vector"].push_back(io::emit_field_elem(x));
      t << " " << p_text(x);
    }
    t << "\nideal: " << ideal_text(I) << (is_whole_ring(I) ? " (whole ring)" : "") << "\n";
    emit(g, j, t.str());
    return 0;
  }
  IFS f = load_ifs(g, path);
  auto res = ideal_of_ifs(f, g.max_level);
  Json j{{"status", status_name(res.status)}, {"route", res.route}, {"levels", res.levels},
         {"graph_route_checked", res.graph_route_checked}, {"ideal", io::emit_ideal(res.ideal)}};
  std::ostringstream t;
  t << "ideal: " << ideal_text(res.ideal) << (is_whole_ring(res.ideal) ? " (whole ring)" : "") << "\n"
    << "status: " << status_name(res.status) << " via " << res.route << "\n";
  if (auto pr = is_principal(res.ideal)) {
    j["principal"] = *pr;
    t << "principal: " << (*pr ? "yes" : "no") << "\n";
  }
  emit(g, j, t.str());
  return 0;
}

int cmd_equiv(const Globals &g, const std::string &a, const std::string &b) {
  Verdict v = lipschitz_equivalent(load_ifs(g, a), load_ifs(g, b), g.max_level);
  std::ostringstream t;
  t << outcome_name(v.outcome) << "\n";
  if (!v.failed.empty()) t << "decided by condition " << v.failed << "\n";
  for (auto &[k, val] : v.certificate) t << "  " << k << ": " << val << "\n";
  emit(g, io::emit_verdict(v), t.str());
  return exit_for(v.outcome);
}

int cmd_classnum(const Globals &g, const std::string &relation) {
  SpecPtr s = relation_spec(relation);
  long hp = class_number_localized(s), hb = class_number_order(s);
  Json j{{"relation", s->relation_str()}, {"ring", ring_description(s)}, {"h_Zp", hp}, {"h_Zbeta", hb}};
  std::ostringstream t;
  t << hp << "\n"
    << "h(Z[p]) = " << hp << " for Z[p] = " << ring_description(s) << "; h(Z[beta]) = " << hb << "\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_lcn(const Globals &g, const std::string &relation, const std::string &ratio) {
  SpecPtr s = relation_spec(relation);
  long n = lipschitz_class_number(s, parse_rational(ratio));
  emit(g, Json{{"relation", s->relation_str()}, {"ratio", ratio}, {"classes", n}}, std::to_string(n) + "\n");
  return 0;
}

int cmd_construct(const Globals &g, const std::string &relation, const std::string &ideal, const std::string &ratio,
                  const std::string &out) {
  SpecPtr s = relation_spec(relation);
  auto gens = io::parse_p_elements(ideal, s);
  auto c = construct_ifs_with_ideal(s, parse_rational(ratio), gens);
  Json sys = io::emit_ifs(c.ifs);
  if (!out.empty()) io::write_json_file(out, sys);
  Json a = Json::array(), b = Json::array();
  for (auto &x : c.a) a.push_back(x.str());
  for (auto &x : c.b) b.push_back(x.str());
  Json j{{"ell", c.ell}, {"dim", c.dim}, {"maps", c.ifs.maps.size()}, {"a", a}, {"b", b},
         {"system", sys}, {"graph", io::emit_graph(c.graph)}};
  std::ostringstream t;
  t << "ell = " << c.ell << ", d = " << c.dim << ", " << c.ifs.maps.size() << " maps; ideal verified\n";
  if (out.empty()) t << sys.dump(2) << "\n";
  else t << "wrote " << out << "\n";
  emit(g, j, t.str());
  return 0;
}

int cmd_member(const Globals &g, const std::string &relation, const std::string &ratio, int dim,
               const std::string &out) {
  SpecPtr s = relation_spec(relation);
  IFS f = construct_member(s, parse_rational(ratio), dim);
  Json sys = io::emit_ifs(f);
  if (!out.empty()) io::write_json_file(out, sys);
  emit(g, sys, out.empty() ? sys.dump(2) + "\n" : "wrote " + out + "\n");
  return 0;
}

std::vector<size_t> index_list(const std::string &text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception &) {
      fail(ErrorCode::ParseError, "bad index \"" + item + "\"");
    }
  return out;
}

int cmd_suitable(const Globals &g, const std::string &path, long level, const std::string &family,
                 const std::string &targets, const std::string &alphabet) {
  IFS f = load_ifs(g, path);
  auto geo = attractor_extent(f);
  std::optional<IdealLattice> I;
  if (!alphabet.empty()) I = ideal_hnf(io::parse_p_elements(alphabet, f.spec), f.spec);
  auto plan = suitable_decomposition(geo, level, index_list(family), io::parse_p_elements(targets, f.spec), I);
  Json parts = Json::array();
  std::ostringstream t;
  t << "K = " << plan.order << " (blocks of level " << plan.level + plan.order << ")\n";
  for (size_t i = 0; i < plan.parts.size(); ++i) {
    parts.push_back(Json{{"blocks", plan.parts[i]}, {"poly", int_poly_str(plan.part_polys[i], "t")}});
    t << "part " << i << ": " << plan.parts[i].size() << " blocks, polynomial " << int_poly_str(plan.part_polys[i], "t")
      << "\n";
  }
  emit(g, Json{{"K", plan.order}, {"level", plan.level}, {"parts", parts}}, t.str());
  return 0;
}

int cmd_witness(const Globals &g, const std::string &a, const std::string &b) {
  auto w = cylinder_witness(load_ifs(g, a), load_ifs(g, b), g.depth);
  Json fam = Json::array();
  for (auto &lvl : w.families) fam.push_back(lvl.size());
  Json j{{"depth", w.depth}, {"varrho", to_string(w.varrho)}, {"iota", w.iota}, {"L", w.bound},
         {"pairs_per_level", fam}, {"measures_exact", w.measures_exact}, {"sampled_pairs", w.sampled_pairs},
         {"max_distortion", w.max_distortion}};
  std::ostringstream t;
  t << "depth " << w.depth << ", varrho = " << to_string(w.varrho) << ", iota = " << w.iota << ", L = " << w.bound
    << "\nmeasures exact: " << (w.measures_exact ? "yes" : "no") << "\nsampled " << w.sampled_pairs
    << " pairs, max distortion " << w.max_distortion << (w.max_distortion <= w.bound ? " <= L" : " > L") << "\n";
  emit(g, j, t.str());
  return w.max_distortion <= w.bound ? 0 : 4;
}

int cmd_noncomm(const Globals &g, const std::string &a, const std::string &b, const std::string &semigroup,
                long bound) {
  auto S = io::load_system(a).ratios, T = io::load_system(b).ratios;
  Json j;
  std::ostringstream t;
  auto sg = sgp_equivalent(S, T);
  j["sgp_equivalent"] = sg.equivalent;
  t << "semigroups: " << (sg.equivalent ? "equivalent (u = " + std::to_string(sg.u) + ", v = " + std::to_string(sg.v) + ")"
                                        : "not equivalent (" + sg.obstruction + ")")
    << "\n";
  try {
    auto z = zplus_equal(S, T, bound);
    j["zplus"] = Json{{"outcome", zplus_name(z.outcome)}, {"route", z.route}, {"bound", z.bound}, {"exact", z.exact},
                      {"common", z.common}, {"counterexample", z.counterexample}};
    t << "Z+: " << zplus_name(z.outcome) << " (" << z.route << ", bound " << z.bound << (z.exact ? ", exact" : "")
      << ")";
    if (!z.common.empty()) t << " " << z.common;
    if (!z.counterexample.empty()) t << " counterexample in " << z.side << ": " << z.counterexample;
    t << "\n";
  } catch (const Error &e) {
    j["zplus"] = Json{{"error", e.what()}};
    t << "Z+: " << e.what() << "\n";
  }
  if (!semigroup.empty()) {
    std::vector<Rat> gens;
    std::stringstream ss(semigroup);
    std::string item;
    while (std::getline(ss, item, ',')) gens.push_back(parse_rational(item));
    RatioSemigroup G(gens);
    for (auto [name, R] : {std::pair{"S", &S}, std::pair{"T", &T}}) {
      try {
        auto sd = subdimension(*R, G);
        std::string val = sd.exact ? to_string(*sd.exact)
                                   : "[" + to_string(sd.enclosure.lo) + ", " + to_string(sd.enclosure.hi) + "]";
        j[std::string("subdimension_") + name] = Json{{"kept", sd.kept}, {"value", val}};
        t << "subsystem of " << name << ": " << sd.kept.size() << " maps, dimension " << val << "\n";
      } catch (const Error &e) {
        if (e.code() != ErrorCode::EmptySubsystem) throw;
        j[std::string("subdimension_") + name] = nullptr;
        t << "subsystem of " << name << ": empty\n";
      }
    }
  }
  emit(g, j, t.str());
  return 0;
}

int cmd_render(const Globals &g, const std::vector<std::string> &paths, const std::string &out, bool blocks) {
  RenderOptions opt;
  opt.depth = g.depth;
  opt.blocks = blocks;
  std::string svg = paths.size() == 2 ? render_pair_svg(load_ifs(g, paths[0]), load_ifs(g, paths[1]), opt)
                                      : render_svg(load_ifs(g, paths[0]), opt);
  if (out.empty()) {
    std::cout << svg;
  } else {
    std::ofstream f(out);
    if (!f) fail(ErrorCode::InvalidInput, "cannot write " + out);
    f << svg;
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lipschitz equivalence of self-similar sets"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--precision", g.precision, "width of dimension enclosures, e.g. 1/10^12 as 1/1000000000000");
  app.add_option("--open-set", g.open_set, "JSON file with region boxes replacing the file's region");
  app.add_flag("--seedless-deterministic", g.deterministic, "reserved; all computations are deterministic");

  std::string a, b, relation, ratio, ideal, out, family, targets, alphabet, semigroup;
  std::vector<std::string> paths;
  long level = 1, bound = 10;
  int dim = 0;
  bool blocks = false;
  int rc = 0;

  auto add_level = [&](CLI::App *c) { c->add_option("--max-level", g.max_level, "block levels to scan"); };

  auto *analyze = app.add_subcommand("analyze", "ratio root, relation, fields and dimension");
  analyze->add_option("file", a)->required();
  analyze->callback([&] { rc = cmd_analyze(g, a); });

  auto *blk = app.add_subcommand("blocks", "block decomposition per level");
  blk->add_option("file", a)->required();
  add_level(blk);
  blk->callback([&] { rc = cmd_blocks(g, a); });

  auto *idl = app.add_subcommand("ideal", "ideal of the system, or of a graph-directed presentation");
  idl->add_option("file", a);
  idl->add_option("--graph", g.graph, "graph-directed JSON");
  add_level(idl);
  idl->callback([&] {
    if (a.empty() && g.graph.empty()) fail(ErrorCode::InvalidInput, "give a system file or --graph");
    rc = cmd_ideal(g, a);
  });

  auto *eq = app.add_subcommand("equiv", "decide Lipschitz equivalence");
  eq->add_option("a", a)->required();
  eq->add_option("b", b)->required();
  add_level(eq);
  eq->callback([&] { rc = cmd_equiv(g, a, b); });

  auto *cn = app.add_subcommand("classnum", "class numbers of Z[p] and Z[beta]");
  cn->add_option("--relation", relation, "e.g. \"p^2+6p=1\"")->required();
  cn->callback([&] { rc = cmd_classnum(g, relation); });

  auto *lc = app.add_subcommand("lcn", "number of Lipschitz classes in a family");
  lc->add_option("--relation", relation)->required();
  lc->add_option("--ratio", ratio)->required();
  lc->callback([&] { rc = cmd_lcn(g, relation, ratio); });

  auto *con = app.add_subcommand("construct", "build a system with a prescribed ideal");
  con->add_option("--relation", relation)->required();
  con->add_option("--ideal", ideal, "generators in p, e.g. \"2,1+p\"")->required();
  con->add_option("--ratio", ratio)->required();
  con->add_option("--out", out, "write the system JSON here");
  con->callback([&] { rc = cmd_construct(g, relation, ideal, ratio, out); });

  auto *mem = app.add_subcommand("member", "build some member of a family");
  mem->add_option("--relation", relation)->required();
  mem->add_option("--ratio", ratio)->required();
  mem->add_option("--dim", dim, "ambient dimension, 0 for the smallest");
  mem->add_option("--out", out);
  mem->callback([&] { rc = cmd_member(g, relation, ratio, dim, out); });

  auto *suit = app.add_subcommand("suitable", "split a family of blocks into parts of given measures");
  suit->add_option("file", a)->required();
  suit->add_option("--level", level)->required();
  suit->add_option("--family", family, "block indices, e.g. \"2\"")->required();
  suit->add_option("--targets", targets, "measures in p, e.g. \"1+p,1-p\"")->required();
  suit->add_option("--alphabet-ideal", alphabet, "targets must lie in this ideal");
  suit->callback([&] { rc = cmd_suitable(g, a, level, family, targets, alphabet); });

  auto *wit = app.add_subcommand("witness", "finite-depth cylinder correspondence");
  wit->add_option("a", a)->required();
  wit->add_option("b", b)->required();
  wit->add_option("--depth", g.depth);
  wit->callback([&] { rc = cmd_witness(g, a, b); });

  auto *nc = app.add_subcommand("noncomm", "necessary conditions without commensurability");
  nc->add_option("a", a)->required();
  nc->add_option("b", b)->required();
  nc->add_option("--semigroup", semigroup, "generators of G, e.g. \"1/9\"");
  nc->add_option("--bound", bound, "degree bound for Z+ membership");
  nc->callback([&] { rc = cmd_noncomm(g, a, b, semigroup, bound); });

  auto *ren = app.add_subcommand("render", "SVG of cylinders");
  ren->add_option("files", paths)->required()->expected(1, 2);
  ren->add_option("--depth", g.depth);
  ren->add_option("--out", out);
  ren->add_flag("--blocks", blocks, "color blocks and mark reversing maps");
  ren->callback([&] { rc = cmd_render(g, paths, out, blocks); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
    case ErrorCode::VerificationFailed: return 4;
    case ErrorCode::PredicateUnresolved:
    case ErrorCode::ExplosionGuard: return 2;
    default: return 3;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return rc;
}
