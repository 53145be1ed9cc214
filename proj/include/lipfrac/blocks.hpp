#pragma once

#include <map>

#include "lipfrac/geometry.hpp"

namespace lipfrac {

struct Cylinder {
  std::vector<int> word;
  Affine map; // map.lambda is the exponent of the cylinder
};

// Cap on enumerated cylinders: LIPFRAC_MAX_CYLINDERS, else 500000.
size_t cylinder_cap();

// Words with lambda(i^-) < k <= lambda(i), in lexicographic order.
std::vector<Cylinder> enumerate_cylinders(const IFS &ifs, long k, size_t cap = 0);

struct Block {
  std::vector<size_t> members; // indices into the decomposition's cylinders
  IntVec poly;                 // xi_{B,0..Lambda}
  Box hull;
  bool interior = false;
};

struct BlockDecomposition {
  long level = 0;
  std::vector<Cylinder> cylinders;
  std::vector<Block> blocks;
  Interval thr2; // (r^k |E|)^2
  long compared_pairs = 0;
};

// Pieces S_i(E) form a connected graph under distance < |E|; this makes every block's
// half-threshold neighbourhood connected at every level.
bool neighbourhood_connectivity(const AttractorGeometry &g);

BlockDecomposition block_decomposition(const AttractorGeometry &g, long k, size_t cap = 0);

// Exact: S_i(O) inside O and pairwise disjoint for box regions, and O meets E.
void check_region(const AttractorGeometry &g, const OpenRegion &region);

struct InteriorSummary {
  long boundary = 0;                   // zeta(k)
  std::map<IntVec, long> interior;     // zeta_P(k)
};
InteriorSummary classify_interior(BlockDecomposition &d, const AttractorGeometry &g, const OpenRegion &region);

// sum over blocks of p^k P_B(p)
FieldElem block_measure_total(const BlockDecomposition &d, const SpecPtr &spec);
FieldElem poly_at_p(const IntVec &poly, const SpecPtr &spec);

struct LevelCounts {
  long k = 0;
  IntVec xi;                 // cylinders by exponent offset
  bool recursion_ok = false; // xi_k = Xi xi_{k-1}
  long blocks = 0;
  long boundary = 0;
  std::map<IntVec, long> interior;
  Interval pk_zeta;          // p^k zeta(k)
  bool normalization_ok = false;
  double varpi = 1;          // max of |B|/(r^k|E|) and its inverse over the level
};
struct CountsTable {
  std::vector<LevelCounts> levels;
  double varpi = 1;
};
CountsTable block_counts(const AttractorGeometry &g, const OpenRegion &region, long k_max);

// Block types: members normalized by the least translation and the level scale.
struct TypeMember {
  long offset;
  RatMat orth;
  RatVec trans;
  auto operator<=>(const TypeMember &) const = default;
};
struct BlockType {
  std::vector<TypeMember> members;
  IntVec poly;
  Box hull;     // normalized hull
  long depth = 0; // level of first appearance
  std::string key;
};
struct TypeEdge {
  size_t src, dst;
  RatVec base; // child = r * E_dst + base, in src coordinates
};
struct TypeGraph {
  std::vector<BlockType> types; // types[0] is E itself
  std::vector<TypeEdge> edges;
  bool closed = false;
  long depth_explored = 0;
  // Interior reachability, filled when a region is supplied.
  std::vector<size_t> v_o;
  bool v_o_exact = false;
  long boundary_states = 0;
};

TypeGraph discover_types(const AttractorGeometry &g, const std::optional<OpenRegion> &region, long k_max,
                         size_t max_types = 4000);

} // namespace lipfrac
