#pragma once

#include "lipfrac/blocks.hpp"
#include "lipfrac/ideal.hpp"

namespace lipfrac {

// E_src contains r^lambda * orth * E_dst + trans.
struct GDEdge {
  size_t src = 0, dst = 0;
  long lambda = 1;
  RatMat orth;
  RatVec trans;
};

// Graph-directed presentation with vertex 0 the self-similar set itself.
struct GDGraph {
  int dim = 1;
  Rat r;
  SpecPtr spec;
  std::vector<std::string> names;
  std::vector<GDEdge> edges;
  std::optional<std::vector<size_t>> v_o;

  size_t vertices() const { return names.size(); }
};

// Reads a type graph as a graph-directed presentation (every edge has exponent 1).
GDGraph graph_from_types(const TypeGraph &tg, const IFS &ifs);

// H^s(E_i)/H^s(E_0), solving v_i = sum p^lambda_e v_dst(e) with v_0 = 1 exactly.
// Throws SingularSystem, NotMember.
std::vector<FieldElem> measure_vector(const GDGraph &gd);

IdealLattice ideal_from_graph(const GDGraph &gd, const std::vector<size_t> &v_o);

enum class IdealStatus { Exact, LowerBound };
const char *status_name(IdealStatus s);

struct IfsIdeal {
  IdealLattice ideal;
  IdealStatus status = IdealStatus::LowerBound;
  std::string route; // "ssc", "cosc", "blocks"
  std::vector<FieldElem> generators;
  long levels = 0;   // block levels scanned for the lower bound
  TypeGraph types;
  bool graph_route_checked = false; // measure_vector agreed with the type polynomials
};

// Lower bound from interior blocks up to k_max; Exact when the type graph closes
// and the interior-type search is exhaustive.
IfsIdeal ideal_from_blocks(const AttractorGeometry &g, const OpenRegion &region, long k_max,
                           long type_depth = 12);

// Whole ring when the region is one box and all maps share an orthogonal part.
std::optional<IdealLattice> cosc_orthogonal_fast_path(const AttractorGeometry &g, const OpenRegion &region);

// Dispatcher: abstract systems are SSC, geometric ones try the fast path, then blocks.
IfsIdeal ideal_of_ifs(const IFS &ifs, long k_max = 3, long type_depth = 12);

} // namespace lipfrac
