#pragma once

#include <string>

#include "lipfrac/geometry.hpp"

namespace lipfrac {

struct RenderOptions {
  long depth = 3;
  bool blocks = false; // color by block at the deepest level, mark reversing maps
  double width = 800;
};

// Cylinder boxes down to `depth`: stacked bars per level in R^1, boxes in R^2.
// Throws DimensionUnsupported for d >= 3.
std::string render_svg(const IFS &ifs, const RenderOptions &opt);
// Two systems side by side (stacked in R^1).
std::string render_pair_svg(const IFS &S, const IFS &T, const RenderOptions &opt);

} // namespace lipfrac
