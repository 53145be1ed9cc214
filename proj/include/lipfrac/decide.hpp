#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipfrac/graph.hpp"

namespace lipfrac {

enum class Outcome { Equivalent, NotEquivalent, Unknown };
const char *outcome_name(Outcome o);

// Ordered key/value record of what was checked.
using Certificate = std::vector<std::pair<std::string, std::string>>;

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::string failed; // condition that decided a NotEquivalent or Unknown, empty otherwise
  Certificate certificate;
  std::optional<FieldElem> scaling; // a with I_S = a I_T, when found

  std::string get(const std::string &key) const;
};

// Image of beta_from inside Q(beta_into) with the same real value, if the fields agree.
// Exact for degree <= 2 and for identical minimal polynomials.
std::optional<FieldElem> embed_beta(const SpecPtr &from, const SpecPtr &into);
std::optional<FieldElem> embed(const FieldElem &x, const SpecPtr &into);

// Z[p] = Z[beta, 1/beta] written as an order with inverted primes, e.g. Z[√3, 1/2].
std::string ring_description(const SpecPtr &spec);
// Z[p_S] = Z[p_T] as subsets of a common field; nullopt when no common field is found.
std::optional<bool> same_ring(const SpecPtr &S, const SpecPtr &T);

// Evidence that E is totally disconnected: certified when the type graph closed.
std::string tdc_evidence(const IfsIdeal &ideal);

Verdict lipschitz_equivalent(const IFS &S, const IFS &T, long k_max = 3);
// Both systems in one family (same p and r). Throws FamilyMismatch.
Verdict same_family_equivalent(const IFS &S, const IFS &T, long k_max = 3);
// Throws EmptyFamily, DegreeUnsupported.
long lipschitz_class_number(const SpecPtr &spec, const Rat &r);
// nullopt when only a minimal polynomial is known and no relation was found.
std::optional<bool> family_nonempty(const SpecPtr &spec, const Rat &r);
// Strong separation on both sides: equivalent iff (i), (ii) and Z[p_S] = Z[p_T].
Verdict ssc_equivalent(const IFS &S, const IFS &T);
// N maps of one ratio r on both sides; nullopt when not applicable.
std::optional<Verdict> equal_ratio_shortcut(const IFS &S, const IFS &T);

// Certified strong separation of a geometric system: disjoint images of the hull box.
bool ssc_certified(const IFS &ifs);

} // namespace lipfrac
