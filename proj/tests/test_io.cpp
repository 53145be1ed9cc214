#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lipfrac/errors.hpp"
#include "lipfrac/json_io.hpp"
#include "lipfrac/svg.hpp"

using namespace lipfrac;
using namespace lipfrac::fixtures;
using io::Json;

namespace {

std::string data(const std::string &name) { return std::string(LIPFRAC_DATA_DIR) + "/" + name; }

size_t count(const std::string &s, const std::string &needle) {
  size_t n = 0;
  for (size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

} // namespace

TEST(Io, IfsRoundTrip) {
  for (const IFS &f : {npi_ifs(), ifs_135(), abstract_ifs(Rat(1, 3), {4, 3, 1})}) {
    Json j = io::emit_ifs(f);
    IFS g = io::parse_ifs(Json::parse(j.dump()));
    EXPECT_EQ(io::emit_ifs(g).dump(), j.dump());
    EXPECT_EQ(g.r, f.r);
    EXPECT_EQ(g.lambdas, f.lambdas);
    EXPECT_EQ(g.region, f.region);
  }
}

TEST(Io, IdealAndGraphRoundTrip) {
  auto I = ideal_of_ifs(npi_ifs()).ideal;
  EXPECT_EQ(io::parse_ideal(Json::parse(io::emit_ideal(I).dump())), I);
  GDGraph gd = gdid_graph();
  GDGraph back = io::parse_graph(Json::parse(io::emit_graph(gd).dump()));
  EXPECT_EQ(io::emit_graph(back).dump(), io::emit_graph(gd).dump());
  EXPECT_EQ(ideal_from_graph(back, *back.v_o), ideal_from_graph(gd, *gd.v_o));
}

TEST(Io, VerdictRoundTrip) {
  Verdict v = lipschitz_equivalent(ifs_135(), ifs_145());
  Json j = io::emit_verdict(v);
  Verdict w = io::parse_verdict(Json::parse(j.dump()), ifs_135().spec);
  EXPECT_EQ(w.outcome, v.outcome);
  EXPECT_EQ(w.failed, v.failed);
  EXPECT_EQ(w.certificate, v.certificate);
  EXPECT_EQ(w.scaling.has_value(), v.scaling.has_value());
  if (v.scaling) {
    EXPECT_EQ(*w.scaling, *v.scaling);
  }
}

TEST(Io, DeterministicOutput) {
  auto a = io::emit_verdict(lipschitz_equivalent(npi_ifs(), abstract_ifs(Rat(1, 10), {2, 1, 1, 1, 1, 1, 1}))).dump();
  auto b = io::emit_verdict(lipschitz_equivalent(npi_ifs(), abstract_ifs(Rat(1, 10), {2, 1, 1, 1, 1, 1, 1}))).dump();
  EXPECT_EQ(a, b);
}

TEST(Io, RationalsAreCanonicalStrings) {
  Json j = io::emit_ifs(npi_ifs());
  EXPECT_EQ(j["maps"][1]["ratio"], "1/100");
  EXPECT_EQ(j["maps"][1]["trans"][0], "3/10");
  EXPECT_THROW(io::parse_ifs(Json::parse(R"({"maps":[{"ratio":0.5,"trans":["0"]}]})")), Error);
}

TEST(Io, RelationText) {
  EXPECT_EQ(io::parse_relation_text("p^2+6p=1"), (IntVec{6, 1}));
  EXPECT_EQ(io::parse_relation_text("4p^2 + 12p = 1"), (IntVec{12, 4}));
  EXPECT_EQ(io::parse_relation_text("2p=1"), (IntVec{2}));
  EXPECT_THROW(io::parse_relation_text("p^2+6p"), Error);
  EXPECT_THROW(io::parse_relation_text("p^2-6p=1"), Error);
  auto s = spec_from_relation({6, 1});
  auto g = io::parse_p_elements("2, 1+p", s);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], FieldElem::from_rat(s, 2));
  EXPECT_EQ(g[1], FieldElem::from_rat(s, 1) + FieldElem::p(s));
}

TEST(Io, FixtureFilesLoad) {
  auto npi = io::load_system(data("npi.json"));
  ASSERT_TRUE(npi.ifs);
  EXPECT_EQ(npi.ifs->r, Rat(1, 10));
  EXPECT_EQ(npi.ifs->spec->relation, (IntVec{6, 1}));
  auto cantor = io::load_system(data("cantor.json"));
  ASSERT_TRUE(cantor.ifs);
  EXPECT_EQ(cantor.ifs->r, Rat(1, 3));
  EXPECT_EQ(FieldElem::p(cantor.ifs->spec), FieldElem::from_rat(cantor.ifs->spec, Rat(1, 2)));
  auto inf = io::load_system(data("infssc_1.json"));
  EXPECT_FALSE(inf.ifs);
  EXPECT_EQ(inf.ratios.size(), 2u);
  auto gd = io::parse_graph(io::read_json_file(data("gdid_graph.json")));
  EXPECT_EQ(ideal_from_graph(gd, *gd.v_o), ideal_of_ifs(npi_ifs()).ideal);
  EXPECT_THROW(io::load_system(data("missing.json")), Error);
}

TEST(Io, SvgShapes) {
  RenderOptions opt;
  opt.depth = 0;
  EXPECT_EQ(count(render_svg(ifs_135(), opt), "<rect"), 1u);
  opt.depth = 2;
  // Levels 0, 1, 2 of three maps: 1 + 3 + 9 bars.
  EXPECT_EQ(count(render_svg(ifs_135(), opt), "<rect"), 13u);
  opt.depth = 1;
  opt.blocks = true;
  // Three reversing maps among the seven.
  EXPECT_EQ(count(render_svg(npi_ifs(), opt), "↺"), 3u);
  IFS cube = make_ifs(3, {{Rat(1, 2), identity_rat(3), {Rat(0), Rat(0), Rat(0)}, 0},
                          {Rat(1, 2), identity_rat(3), {Rat(1, 2), Rat(1, 2), Rat(1, 2)}, 0}});
  EXPECT_THROW(render_svg(cube, opt), Error);
}
