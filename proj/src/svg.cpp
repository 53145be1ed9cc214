#include "lipfrac/svg.hpp"

#include <cstdio>
#include <sstream>

#include "lipfrac/blocks.hpp"
#include "lipfrac/errors.hpp"

namespace lipfrac {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const char *palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                         "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

bool reverses(const RatMat &m) {
  if (m.size() == 1) return m[0][0] < 0;
  if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0] < 0;
  return false;
}

struct Frame {
  double x0, y0, w, h; // target rectangle
  Box hull;            // source box
  double sx(const Rat &x, int k) const {
    double lo = to_double(hull.lo[k]), hi = to_double(hull.hi[k]);
    double span = hi > lo ? hi - lo : 1;
    return (to_double(x) - lo) / span;
  }
};

// Body of one system inside a frame; returns the used height.
double draw(std::ostringstream &out, const IFS &ifs, const RenderOptions &opt, double x0, double y0) {
  if (ifs.kind != IfsKind::Geometric) fail(ErrorCode::DimensionUnsupported, "only geometric systems can be drawn");
  if (ifs.dim >= 3) fail(ErrorCode::DimensionUnsupported, "rendering supports dimensions 1 and 2");
  auto g = attractor_extent(ifs);
  Frame f{x0, y0, opt.width, opt.width, g.hull};
  const double bar = 18, gap = 10;
  // Block color per deepest-level cylinder index.
  std::vector<int> color;
  BlockDecomposition blocks;
  if (opt.blocks && opt.depth >= 1) {
    blocks = block_decomposition(g, opt.depth);
    color.assign(blocks.cylinders.size(), 0);
    for (size_t b = 0; b < blocks.blocks.size(); ++b)
      for (size_t m : blocks.blocks[b].members) color[m] = static_cast<int>(b % 10);
  }
  if (ifs.dim == 1) {
    double y = y0;
    for (long k = 0; k <= opt.depth; ++k) {
      std::vector<Cylinder> cyl;
      if (k == 0) cyl.push_back({{}, Affine::identity(1)});
      else if (opt.blocks && k == opt.depth) cyl = blocks.cylinders;
      else cyl = enumerate_cylinders(ifs, k);
      for (size_t i = 0; i < cyl.size(); ++i) {
        Box b = k == 0 ? g.hull : g.image_box(cyl[i].map);
        double a = x0 + f.sx(b.lo[0], 0) * f.w, c = x0 + f.sx(b.hi[0], 0) * f.w;
        const char *fill = (opt.blocks && k == opt.depth) ? palette[color[i]] : "#555555";
        out << "  <rect x=\"" << num(a) << "\" y=\"" << num(y) << "\" width=\"" << num(std::max(c - a, 0.5))
            << "\" height=\"" << num(bar) << "\" fill=\"" << fill << "\"/>\n";
        if (opt.blocks && k > 0 && reverses(cyl[i].map.orth))
          out << "  <text x=\"" << num((a + c) / 2) << "\" y=\"" << num(y - 2)
              << "\" font-size=\"10\" text-anchor=\"middle\">↺</text>\n";
      }
      y += bar + gap;
    }
    return y - y0;
  }
  std::vector<Cylinder> cyl;
  if (opt.depth == 0) cyl.push_back({{}, Affine::identity(2)});
  else if (opt.blocks) cyl = blocks.cylinders;
  else cyl = enumerate_cylinders(ifs, opt.depth);
  out << "  <rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(f.w) << "\" height=\""
      << num(f.h) << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  for (size_t i = 0; i < cyl.size(); ++i) {
    Box b = opt.depth == 0 ? g.hull : g.image_box(cyl[i].map);
    double a = x0 + f.sx(b.lo[0], 0) * f.w, c = x0 + f.sx(b.hi[0], 0) * f.w;
    // SVG y grows downwards.
    double top = y0 + (1 - f.sx(b.hi[1], 1)) * f.h, bot = y0 + (1 - f.sx(b.lo[1], 1)) * f.h;
    const char *fill = opt.blocks ? palette[color[i]] : "#555555";
    out << "  <rect x=\"" << num(a) << "\" y=\"" << num(top) << "\" width=\"" << num(std::max(c - a, 0.5))
        << "\" height=\"" << num(std::max(bot - top, 0.5)) << "\" fill=\"" << fill << "\"/>\n";
    if (opt.blocks && opt.depth > 0 && reverses(cyl[i].map.orth))
      out << "  <text x=\"" << num((a + c) / 2) << "\" y=\"" << num((top + bot) / 2)
          << "\" font-size=\"10\" text-anchor=\"middle\">↺</text>\n";
  }
  return f.h;
}

std::string wrap(const std::string &body, double w, double h) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n"
      << body << "</svg>\n";
  return out.str();
}

} // namespace

std::string render_svg(const IFS &ifs, const RenderOptions &opt) {
  std::ostringstream body;
  double h = draw(body, ifs, opt, 10, 14);
  return wrap(body.str(), opt.width + 20, h + 24);
}

std::string render_pair_svg(const IFS &S, const IFS &T, const RenderOptions &opt) {
  std::ostringstream body;
  double h1 = draw(body, S, opt, 10, 14);
  if (S.dim == 1 && T.dim == 1) {
    double h2 = draw(body, T, opt, 10, 14 + h1 + 20);
    return wrap(body.str(), opt.width + 20, h1 + h2 + 44);
  }
  double h2 = draw(body, T, opt, opt.width + 30, 14);
  return wrap(body.str(), 2 * opt.width + 40, std::max(h1, h2) + 24);
}

} // namespace lipfrac
