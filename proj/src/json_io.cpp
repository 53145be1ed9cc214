#include "lipfrac/json_io.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <regex>

#include "lipfrac/errors.hpp"

namespace lipfrac::io {

namespace {

Json rat_json(const Rat &q) { return to_string(q); }

Rat rat_of(const Json &j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  fail(ErrorCode::ParseError, "expected a rational as \"a/b\" or an integer, got " + j.dump());
}

Json vec_json(const RatVec &v) {
  Json a = Json::array();
  for (auto &x : v) a.push_back(rat_json(x));
  return a;
}
RatVec vec_of(const Json &j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an array, got " + j.dump());
  RatVec v;
  for (auto &x : j) v.push_back(rat_of(x));
  return v;
}
Json mat_json(const RatMat &m) {
  Json a = Json::array();
  for (auto &row : m) a.push_back(vec_json(row));
  return a;
}
RatMat mat_of(const Json &j) {
  RatMat m;
  for (auto &row : j) m.push_back(vec_of(row));
  return m;
}
Json ints_json(const IntVec &v) {
  Json a = Json::array();
  for (auto &x : v) a.push_back(x.get_str());
  return a;
}
IntVec ints_of(const Json &j) {
  IntVec v;
  for (auto &x : j) {
    if (x.is_string()) v.push_back(Int(x.get<std::string>()));
    else if (x.is_number_integer()) v.push_back(Int(x.get<long>()));
    else fail(ErrorCode::ParseError, "expected an integer, got " + x.dump());
  }
  return v;
}

const Json &need(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json region_json(const OpenRegion &r) {
  Json a = Json::array();
  for (auto &b : r.boxes) a.push_back(Json{{"lo", vec_json(b.lo)}, {"hi", vec_json(b.hi)}});
  return a;
}
OpenRegion region_of(const Json &j) {
  OpenRegion r;
  for (auto &b : j) r.boxes.push_back(Box{vec_of(need(b, "lo")), vec_of(need(b, "hi"))});
  return r;
}

std::vector<long> longs_of(const Json &j) {
  std::vector<long> out;
  for (auto &x : j) {
    if (!x.is_number_integer()) fail(ErrorCode::ParseError, "expected an integer exponent, got " + x.dump());
    out.push_back(x.get<long>());
  }
  return out;
}

} // namespace

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string &path, const Json &j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

Json emit_ifs(const IFS &ifs) {
  Json j;
  if (ifs.kind == IfsKind::Abstract) {
    j["ratio_root"] = rat_json(ifs.r);
    j["exponents"] = ifs.lambdas;
    return j;
  }
  j["dim"] = ifs.dim;
  Json maps = Json::array();
  for (auto &m : ifs.maps) maps.push_back(Json{{"ratio", rat_json(m.ratio)}, {"orth", mat_json(m.orth)}, {"trans", vec_json(m.trans)}});
  j["maps"] = maps;
  if (ifs.region) j["region"] = region_json(*ifs.region);
  return j;
}

namespace {

std::vector<Similarity> maps_of(const Json &j, int dim) {
  std::vector<Similarity> maps;
  for (auto &m : need(j, "maps")) {
    Similarity s;
    s.ratio = rat_of(need(m, "ratio"));
    s.orth = m.contains("orth") ? mat_of(m.at("orth")) : identity_rat(dim);
    s.trans = vec_of(need(m, "trans"));
    maps.push_back(s);
  }
  return maps;
}

} // namespace

IFS parse_ifs(const Json &j) {
  if (j.contains("ratio_root")) {
    Rat r = rat_of(j.at("ratio_root"));
    return abstract_ifs(r, longs_of(need(j, "exponents")));
  }
  int dim = j.contains("dim") ? j.at("dim").get<int>() : 1;
  auto maps = maps_of(j, dim);
  std::optional<OpenRegion> region;
  if (j.contains("region")) region = region_of(j.at("region"));
  return make_ifs(dim, maps, region);
}

SystemInput parse_system(const Json &j) {
  SystemInput in;
  if (j.contains("ratios")) {
    for (auto &x : j.at("ratios")) in.ratios.push_back(rat_of(x));
    try {
      auto root = ratio_root(in.ratios);
      long g = 0;
      for (long l : root.exponents) g = std::gcd(g, l);
      for (long &l : root.exponents) l /= g;
      in.ifs = abstract_ifs(rpow(root.r, g), root.exponents);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::NonCommensurable) throw;
    }
    return in;
  }
  if (j.contains("maps")) {
    int dim = j.contains("dim") ? j.at("dim").get<int>() : 1;
    for (auto &m : maps_of(j, dim)) in.ratios.push_back(m.ratio);
    try {
      in.ifs = parse_ifs(j);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::NonCommensurable) throw;
    }
    return in;
  }
  in.ifs = parse_ifs(j);
  in.ratios = ratios_of(*in.ifs);
  return in;
}

SystemInput load_system(const std::string &path) { return parse_system(read_json_file(path)); }

Json emit_spec(const SpecPtr &spec) {
  Json j;
  if (!spec->relation.empty()) j["relation"] = ints_json(spec->relation);
  j["beta_min_poly"] = ints_json(spec->beta_min_poly);
  j["beta_interval"] = Json::array({rat_json(spec->beta_interval.lo), rat_json(spec->beta_interval.hi)});
  return j;
}

SpecPtr parse_spec(const Json &j) {
  if (!j.contains("relation")) fail(ErrorCode::ParseError, "a field needs its \"relation\" coefficients");
  SpecPtr s = spec_from_relation(ints_of(j.at("relation")), false);
  if (j.contains("beta_min_poly") && ints_of(j.at("beta_min_poly")) != s->beta_min_poly)
    fail(ErrorCode::ParseError, "beta_min_poly does not match the relation");
  return s;
}

Json emit_field_elem(const FieldElem &x) {
  return Json{{"beta_coords", vec_json(x.coords())}, {"text", x.str()}};
}

FieldElem parse_field_elem(const Json &j, const SpecPtr &spec) {
  return FieldElem(spec, vec_of(need(j, "beta_coords")));
}

Json emit_ideal(const IdealLattice &I) {
  Json hnf = Json::array();
  for (auto &row : I.hnf) hnf.push_back(ints_json(row));
  Json gens = Json::array();
  for (auto &g : ideal_generators(I)) gens.push_back(g.str());
  return Json{{"field", emit_spec(I.owner)}, {"hnf", hnf}, {"saturated", I.saturated}, {"generators", gens},
              {"text", I.str()}};
}

IdealLattice parse_ideal(const Json &j) {
  IdealLattice I;
  I.owner = parse_spec(need(j, "field"));
  for (auto &row : need(j, "hnf")) I.hnf.push_back(ints_of(row));
  I.saturated = need(j, "saturated").get<bool>();
  if (static_cast<int>(I.hnf.size()) != I.owner->degree) fail(ErrorCode::ParseError, "hnf has the wrong size");
  return I;
}

Json emit_verdict(const Verdict &v) {
  Json cert = Json::array();
  for (auto &[k, val] : v.certificate) cert.push_back(Json::array({k, val}));
  Json j{{"outcome", outcome_name(v.outcome)}, {"failed", v.failed}, {"certificate", cert}};
  if (v.scaling) j["scaling"] = emit_field_elem(*v.scaling);
  return j;
}

Verdict parse_verdict(const Json &j, const SpecPtr &scaling_field) {
  Verdict v;
  std::string o = need(j, "outcome").get<std::string>();
  if (o == outcome_name(Outcome::Equivalent)) v.outcome = Outcome::Equivalent;
  else if (o == outcome_name(Outcome::NotEquivalent)) v.outcome = Outcome::NotEquivalent;
  else if (o == outcome_name(Outcome::Unknown)) v.outcome = Outcome::Unknown;
  else fail(ErrorCode::ParseError, "unknown outcome " + o);
  v.failed = need(j, "failed").get<std::string>();
  for (auto &kv : need(j, "certificate")) v.certificate.push_back({kv.at(0).get<std::string>(), kv.at(1).get<std::string>()});
  if (j.contains("scaling") && scaling_field) v.scaling = parse_field_elem(j.at("scaling"), scaling_field);
  return v;
}

Json emit_graph(const GDGraph &gd) {
  Json edges = Json::array();
  for (auto &e : gd.edges)
    edges.push_back(Json{{"from", e.src}, {"to", e.dst}, {"lambda", e.lambda}, {"orth", mat_json(e.orth)}, {"trans", vec_json(e.trans)}});
  Json j{{"dim", gd.dim}, {"ratio_root", rat_json(gd.r)}, {"field", emit_spec(gd.spec)}, {"vertices", gd.names}, {"edges", edges}};
  if (gd.v_o) j["v_o"] = *gd.v_o;
  return j;
}

GDGraph parse_graph(const Json &j) {
  GDGraph gd;
  gd.dim = j.contains("dim") ? j.at("dim").get<int>() : 1;
  gd.r = rat_of(need(j, "ratio_root"));
  gd.spec = parse_spec(need(j, "field"));
  gd.names = need(j, "vertices").get<std::vector<std::string>>();
  for (auto &e : need(j, "edges")) {
    GDEdge g;
    g.src = need(e, "from").get<size_t>();
    g.dst = need(e, "to").get<size_t>();
    g.lambda = need(e, "lambda").get<long>();
    g.orth = e.contains("orth") ? mat_of(e.at("orth")) : identity_rat(gd.dim);
    g.trans = vec_of(need(e, "trans"));
    if (g.src >= gd.names.size() || g.dst >= gd.names.size()) fail(ErrorCode::ParseError, "edge names a missing vertex");
    gd.edges.push_back(g);
  }
  if (j.contains("v_o")) gd.v_o = j.at("v_o").get<std::vector<size_t>>();
  return gd;
}

namespace {

// Sum of terms c, c p, c p^k in p; returns exponent -> coefficient.
std::map<long, Int> parse_p_poly(std::string text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
  if (s.empty()) fail(ErrorCode::ParseError, "empty polynomial");
  static const std::regex term(R"(([+-]?)(\d*)(p(\^(\d+))?)?)");
  std::map<long, Int> out;
  size_t pos = 0;
  while (pos < s.size()) {
    std::smatch m;
    std::string rest = s.substr(pos);
    if (!std::regex_search(rest, m, term, std::regex_constants::match_continuous) || m.length(0) == 0 ||
        (m[2].length() == 0 && m[3].length() == 0))
      fail(ErrorCode::ParseError, "cannot read \"" + text + "\" at \"" + rest + "\"");
    if (pos > 0 && m[1].length() == 0) fail(ErrorCode::ParseError, "missing sign in \"" + text + "\"");
    Int c = m[2].length() ? Int(m[2].str()) : Int(1);
    if (m[1].str() == "-") c = -c;
    long e = m[3].length() == 0 ? 0 : (m[5].length() ? std::stol(m[5].str()) : 1);
    out[e] += c;
    pos += m.length(0);
  }
  return out;
}

} // namespace

IntVec parse_relation_text(const std::string &text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) fail(ErrorCode::ParseError, "relation needs \"= 1\"");
  auto lhs = parse_p_poly(text.substr(0, eq));
  auto rhs = parse_p_poly(text.substr(eq + 1));
  for (auto &[e, c] : rhs) lhs[e] -= c;
  if (lhs[0] != -1) fail(ErrorCode::ParseError, "relation must read sum xi_l p^l = 1");
  lhs.erase(0);
  long n = lhs.empty() ? 0 : lhs.rbegin()->first;
  IntVec xi(n, 0);
  for (auto &[e, c] : lhs) {
    if (c < 0) fail(ErrorCode::ParseError, "relation coefficients must be nonnegative");
    xi[e - 1] = c;
  }
  return xi;
}

std::vector<FieldElem> parse_p_elements(const std::string &text, const SpecPtr &spec) {
  std::vector<FieldElem> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::map<long, Rat> terms;
    for (auto &[e, c] : parse_p_poly(part)) terms[e] = Rat(c);
    out.push_back(FieldElem::from_p_laurent(spec, terms));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

} // namespace lipfrac::io
