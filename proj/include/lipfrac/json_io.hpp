#pragma once

#include <json.hpp>
#include <string>

#include "lipfrac/decide.hpp"
#include "lipfrac/noncomm.hpp"
#include "lipfrac/synthesis.hpp"

namespace lipfrac::io {

// Insertion-ordered, so emitted files are byte-stable.
using Json = nlohmann::ordered_json;

Json read_json_file(const std::string &path); // throws ParseError
void write_json_file(const std::string &path, const Json &j);

// A system file: geometric maps, an exponent-only system, or bare ratios. Ratio lists
// that are not commensurable leave `ifs` empty.
struct SystemInput {
  std::optional<IFS> ifs;
  std::vector<Rat> ratios;
};
SystemInput parse_system(const Json &j);
SystemInput load_system(const std::string &path);

Json emit_ifs(const IFS &ifs);
IFS parse_ifs(const Json &j);

Json emit_spec(const SpecPtr &spec);
SpecPtr parse_spec(const Json &j);

Json emit_field_elem(const FieldElem &x);
FieldElem parse_field_elem(const Json &j, const SpecPtr &spec);

Json emit_ideal(const IdealLattice &I);
IdealLattice parse_ideal(const Json &j);

Json emit_verdict(const Verdict &v);
Verdict parse_verdict(const Json &j, const SpecPtr &scaling_field = nullptr);

Json emit_graph(const GDGraph &gd);
GDGraph parse_graph(const Json &j);

// "p^2+6p=1" -> xi = (6, 1).
IntVec parse_relation_text(const std::string &text);
// "2,1+p" -> elements of Z[p]; terms are integer multiples of powers of p.
std::vector<FieldElem> parse_p_elements(const std::string &text, const SpecPtr &spec);

} // namespace lipfrac::io
