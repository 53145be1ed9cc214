#include "lipfrac/decide.hpp"

#include <numeric>

#include "lipfrac/classgroup.hpp"
#include "lipfrac/errors.hpp"
#include "lipfrac/positivity.hpp"

namespace lipfrac {

const char *outcome_name(Outcome o) {
  switch (o) {
  case Outcome::Equivalent: return "Equivalent";
  case Outcome::NotEquivalent: return "NotEquivalent";
  default: return "Unknown";
  }
}

std::string Verdict::get(const std::string &key) const {
  for (auto &[k, v] : certificate)
    if (k == key) return v;
  return {};
}

namespace {

Verdict decided(Outcome o, const std::string &failed, Certificate cert) {
  Verdict v;
  v.outcome = o;
  v.failed = failed;
  v.certificate = std::move(cert);
  return v;
}

std::string ideal_str(const IdealLattice &I) {
  std::string s;
  for (auto &g : ideal_generators(I)) s += (s.empty() ? "" : ", ") + g.str();
  return "(" + s + ")";
}

Int radical(const Int &n) {
  Int r = 1;
  for (auto &[q, e] : factorize(abs(n))) r *= q;
  return r;
}

} // namespace

std::optional<FieldElem> embed_beta(const SpecPtr &from, const SpecPtr &into) {
  if (same_spec(from, into)) return FieldElem::beta(into);
  if (from->degree != into->degree) return std::nullopt;
  if (from->degree == 1) return FieldElem::from_rat(into, Rat(-from->beta_min_poly[0]));
  if (from->degree != 2) return std::nullopt;
  // beta_F = (t_F + sigma q s_I) / 2, where s_I = 2 beta_I - t_I squares to disc_I.
  auto trace = [](const SpecPtr &s) { return Int(-s->beta_min_poly[1]); };
  auto disc = [&](const SpecPtr &s) { return Int(trace(s) * trace(s) - 4 * s->beta_min_poly[0]); };
  Rat ratio(disc(from), disc(into));
  ratio.canonicalize();
  Int qn, qd;
  if (!is_square(ratio.get_num(), &qn) || !is_square(ratio.get_den(), &qd)) return std::nullopt;
  Rat q(qn, qd);
  q.canonicalize();
  FieldElem sI = FieldElem::beta(into) * Rat(2) - FieldElem::from_rat(into, Rat(trace(into)));
  Interval target = from->beta_enclosure(128);
  for (int sigma : {1, -1}) {
    FieldElem cand = (FieldElem::from_rat(into, Rat(trace(from))) + sI * (q * sigma)) * Rat(1, 2);
    Interval e = cand.enclosure(128);
    if (e.hi >= target.lo && e.lo <= target.hi) return cand;
  }
  return std::nullopt;
}

std::optional<FieldElem> embed(const FieldElem &x, const SpecPtr &into) {
  auto b = embed_beta(x.spec(), into);
  if (!b) return std::nullopt;
  FieldElem acc = FieldElem::from_rat(into, 0), pw = FieldElem::from_rat(into, 1);
  for (auto &c : x.coords()) {
    acc = acc + pw * c;
    pw = pw * *b;
  }
  return acc;
}

std::string ring_description(const SpecPtr &spec) {
  Int N = abs(spec->norm_beta);
  std::string loc = N == 1 ? "" : ", 1/" + radical(N).get_str();
  if (spec->degree == 1) return "Z[1/" + Int(-spec->beta_min_poly[0]).get_str() + "]";
  if (spec->degree == 2) {
    QuadInfo q = quad_info(spec);
    Int f = q.conductor;
    for (auto &[pr, e] : factorize(N))
      while (f % pr == 0) f /= pr;
    auto coef = [](const Int &c) { return c == 1 ? std::string() : c.get_str(); };
    std::string root = "√" + q.squarefree.get_str();
    std::string gen;
    if (q.fund_disc % 4 == 0)
      gen = coef(f) + root;
    else if (f % 2 == 0)
      gen = coef(f / 2) + root;
    else
      gen = coef(f) + "(1+" + root + ")/2";
    return "Z[" + gen + loc + "]";
  }
  return "Z[beta" + loc + "] with beta a root of " + Poly::from_int(spec->beta_min_poly).str();
}

std::optional<bool> same_ring(const SpecPtr &S, const SpecPtr &T) {
  auto pT = embed(FieldElem::p(T), S);
  auto pS = embed(FieldElem::p(S), T);
  if (!pT || !pS) return std::nullopt;
  return member_of_Zp(*pT) && member_of_Zp(*pS);
}

std::string tdc_evidence(const IfsIdeal &ideal) {
  if (ideal.route == "ssc") return "strong separation (asserted for an abstract system)";
  if (ideal.types.closed)
    return "certified: type graph closed with " + std::to_string(ideal.types.types.size()) +
           " types, so block diameters shrink like r^k";
  if (ideal.route == "cosc") return "convex open set with disjoint images; no type graph built";
  return "evidence: blocks separated through level " + std::to_string(ideal.levels);
}

bool ssc_certified(const IFS &ifs) {
  if (ifs.kind == IfsKind::Abstract) return true;
  auto g = attractor_extent(ifs);
  std::vector<Box> boxes;
  for (auto &m : ifs.maps) boxes.push_back(g.image_box(Affine::of(m)));
  for (size_t i = 0; i < boxes.size(); ++i)
    for (size_t j = i + 1; j < boxes.size(); ++j)
      if (box_dist2(boxes[i], boxes[j]) == 0) return false;
  return true;
}

namespace {

// Conditions (ii) then (i); returns a verdict when one of them fails.
std::optional<Verdict> ratio_and_dimension(const IFS &S, const IFS &T, Certificate &cert) {
  auto mn = commensurable_pair(S.r, T.r);
  if (!mn) {
    cert.push_back({"ii", "failed: log r_S / log r_T is irrational"});
    return decided(Outcome::NotEquivalent, "ii", cert);
  }
  cert.push_back({"ii", "passed"});
  cert.push_back({"m", std::to_string(mn->first)});
  cert.push_back({"n", std::to_string(mn->second)});
  auto dim = dimensions_equal(S, T);
  if (!dim.equal) {
    cert.push_back({"i", "failed: " + dim.reason});
    return decided(Outcome::NotEquivalent, "i", cert);
  }
  cert.push_back({"i", "passed: " + dim.reason});
  return std::nullopt;
}

// Condition (iii) for two exact ideals.
Verdict compare_ideals(const IdealLattice &IS, const IdealLattice &IT, Certificate cert) {
  const SpecPtr &S = IS.owner, &T = IT.owner;
  cert.push_back({"ideal_S", ideal_str(IS)});
  cert.push_back({"ideal_T", ideal_str(IT)});
  cert.push_back({"ring_S", ring_description(S)});
  cert.push_back({"ring_T", ring_description(T)});
  auto rings = same_ring(S, T);
  if (!rings) {
    if (S->degree != T->degree) {
      cert.push_back({"iii", "failed: p_S and p_T have different degrees"});
      return decided(Outcome::NotEquivalent, "iii", cert);
    }
    fail(ErrorCode::FieldMismatch, "no common field found for p_S and p_T");
  }
  if (!*rings) {
    if (is_whole_ring(IS) && is_whole_ring(IT)) {
      cert.push_back({"iii", "failed: whole rings with different multiplier rings"});
      return decided(Outcome::NotEquivalent, "iii", cert);
    }
    cert.push_back({"iii", "undecided: rings differ and the ideals are proper"});
    return decided(Outcome::Unknown, "iii", cert);
  }
  // Same ring: move I_T into the field of S.
  std::vector<FieldElem> gens;
  for (auto &g : ideal_generators(IT)) gens.push_back(*embed(g, S));
  IdealLattice IT2 = ideal_hnf(gens, S);
  cert.push_back({"scaling_field", "a may be taken in Q(p): a = x/y with x in I_S, y in I_T"});
  auto same = same_class(IS, IT2);
  if (!same) {
    cert.push_back({"iii", "undecided: scaling search exhausted"});
    return decided(Outcome::Unknown, "iii", cert);
  }
  if (!*same) {
    cert.push_back({"iii", "failed: ideal classes differ"});
    return decided(Outcome::NotEquivalent, "iii", cert);
  }
  Verdict v = decided(Outcome::Equivalent, "", cert);
  if (auto a = find_scaling(IS, IT2)) {
    v.scaling = *a;
    v.certificate.push_back({"a", a->str()});
  } else {
    v.certificate.push_back({"a", "not located within the search box; the class test decided"});
  }
  v.certificate.push_back({"iii", "passed"});
  return v;
}

} // namespace

Verdict lipschitz_equivalent(const IFS &S, const IFS &T, long k_max) {
  Certificate cert;
  if (auto v = ratio_and_dimension(S, T, cert)) return *v;
  IfsIdeal IS = ideal_of_ifs(S, k_max), IT = ideal_of_ifs(T, k_max);
  cert.push_back({"route_S", IS.route});
  cert.push_back({"route_T", IT.route});
  cert.push_back({"tdc_S", tdc_evidence(IS)});
  cert.push_back({"tdc_T", tdc_evidence(IT)});
  if (IS.status != IdealStatus::Exact || IT.status != IdealStatus::Exact) {
    cert.push_back({"iii", "undecided: an ideal is only a lower bound (type graph did not close)"});
    return decided(Outcome::Unknown, "iii", cert);
  }
  return compare_ideals(IS.ideal, IT.ideal, cert);
}

Verdict same_family_equivalent(const IFS &S, const IFS &T, long k_max) {
  if (S.r != T.r || !same_spec(S.spec, T.spec))
    fail(ErrorCode::FamilyMismatch, "systems have different p or r");
  Certificate cert = {{"family", "p: " + S.spec->relation_str() + ", r = " + to_string(S.r)}};
  IfsIdeal IS = ideal_of_ifs(S, k_max), IT = ideal_of_ifs(T, k_max);
  if (IS.status != IdealStatus::Exact || IT.status != IdealStatus::Exact) {
    cert.push_back({"iii", "undecided: an ideal is only a lower bound"});
    return decided(Outcome::Unknown, "iii", cert);
  }
  return compare_ideals(IS.ideal, IT.ideal, cert);
}

std::optional<bool> family_nonempty(const SpecPtr &spec, const Rat &r) {
  if (r <= 0 || r >= 1) return false;
  std::vector<long> exps;
  if (!spec->relation.empty()) {
    for (size_t l = 0; l < spec->relation.size(); ++l)
      if (spec->relation[l] > 0) exps.push_back(static_cast<long>(l + 1));
  } else {
    // 1 = p * beta with beta written positively in powers of p.
    IntVec c = positive_representation(FieldElem::beta(spec));
    for (size_t k = 0; k < c.size(); ++k)
      if (c[k] > 0) exps.push_back(static_cast<long>(k + 1));
  }
  long g = 0;
  for (long e : exps) g = std::gcd(g, e);
  if (g == 1) return true;
  if (!spec->relation.empty()) return false;
  return std::nullopt;
}

long lipschitz_class_number(const SpecPtr &spec, const Rat &r) {
  auto ne = family_nonempty(spec, r);
  if (!ne || !*ne) fail(ErrorCode::EmptyFamily, "no self-similar set has this p and r");
  return class_number_localized(spec);
}

Verdict ssc_equivalent(const IFS &S, const IFS &T) {
  if (!ssc_certified(S) || !ssc_certified(T))
    fail(ErrorCode::InvalidInput, "strong separation could not be certified");
  Certificate cert;
  if (auto v = ratio_and_dimension(S, T, cert)) return *v;
  cert.push_back({"ring_S", ring_description(S.spec)});
  cert.push_back({"ring_T", ring_description(T.spec)});
  auto rings = same_ring(S.spec, T.spec);
  if (!rings) {
    if (S.spec->degree != T.spec->degree) {
      cert.push_back({"iii", "failed: p_S and p_T have different degrees"});
      return decided(Outcome::NotEquivalent, "iii", cert);
    }
    fail(ErrorCode::FieldMismatch, "no common field found for p_S and p_T");
  }
  if (!*rings) {
    cert.push_back({"iii", "failed: " + ring_description(S.spec) + " != " + ring_description(T.spec)});
    return decided(Outcome::NotEquivalent, "iii", cert);
  }
  cert.push_back({"iii", "passed: Z[p_S] = Z[p_T]"});
  return decided(Outcome::Equivalent, "", cert);
}

std::optional<Verdict> equal_ratio_shortcut(const IFS &S, const IFS &T) {
  auto uniform = [](const IFS &f) {
    for (long l : f.lambdas)
      if (l != f.lambdas[0]) return false;
    return true;
  };
  if (S.size() != T.size() || !uniform(S) || !uniform(T)) return std::nullopt;
  if (S.maps.empty() || T.maps.empty() || S.maps[0].ratio != T.maps[0].ratio) return std::nullopt;
  return decided(Outcome::Equivalent, "",
                 {{"shortcut", std::to_string(S.size()) + " maps of ratio " + to_string(S.maps[0].ratio) +
                                   " on both sides"}});
}

} // namespace lipfrac
