#pragma once

// SVG rendering of planar patches. Coordinates are rounded to six decimals
// here and only here; nothing computed from the output feeds back into checks.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "lonely/analysis.hpp"
#include "lonely/patch.hpp"

namespace lonely {

struct RenderOptions {
  bool graph = false;    // overlay vertex-edge graph edges
  bool markers = false;  // mark interior points and lonely vertices
  bool a_type = false;   // highlight tile vertices (A-type cone apexes)
  double pixels_per_unit = 40.0;
};

namespace detail {

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const Patch& patch, const RenderOptions& opt = {}) {
  if (patch.dim() != 2) throw UnsupportedDim("only planar patches can be rendered");
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  bool first = true;
  for (const auto& t : patch.tiles())
    for (const auto& v : t.shape.vertices()) {
      double x = v[0].to_double(), y = v[1].to_double();
      if (first) {
        minx = maxx = x;
        miny = maxy = y;
        first = false;
      }
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  double pad = 0.05 * std::max({maxx - minx, maxy - miny, 1e-6});
  minx -= pad;
  miny -= pad;
  maxx += pad;
  maxy += pad;
  const double w = maxx - minx, h = maxy - miny;
  auto X = [&](const Scalar& s) { return detail::fmt6(s.to_double()); };
  // Flip y so the picture has the usual mathematical orientation.
  auto Y = [&](const Scalar& s) { return detail::fmt6(0.0 - s.to_double()); };
  const double stroke = 0.004 * std::max(w, h);

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt6(w * opt.pixels_per_unit) +
         "\" height=\"" + detail::fmt6(h * opt.pixels_per_unit) + "\" viewBox=\"" + detail::fmt6(minx) + " " +
         detail::fmt6(-maxy) + " " + detail::fmt6(w) + " " + detail::fmt6(h) + "\">\n";
  out += "<g id=\"tiles\" fill=\"#e8eef7\" stroke=\"#1f3b63\" stroke-width=\"" + detail::fmt6(stroke) + "\">\n";
  for (const auto& t : patch.tiles()) {
    out += "<polygon data-tile=\"" + std::to_string(t.id) + "\" points=\"";
    const auto& vs = t.shape.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) out += " ";
      out += X(vs[i][0]) + "," + Y(vs[i][1]);
    }
    out += "\"/>\n";
  }
  out += "</g>\n";

  if (opt.graph && !patch.empty()) {
    VertexGraph g = build_graph(patch);
    out += "<g id=\"graph\" stroke=\"#c0392b\" stroke-width=\"" + detail::fmt6(stroke / 2) + "\">\n";
    for (auto [a, b] : g.edges()) {
      const auto& p = g.nodes()[a];
      const auto& q = g.nodes()[b];
      out += "<line x1=\"" + X(p[0]) + "\" y1=\"" + Y(p[1]) + "\" x2=\"" + X(q[0]) + "\" y2=\"" + Y(q[1]) + "\"/>\n";
    }
    out += "</g>\n";
  }
  const std::string r = detail::fmt6(3 * stroke);
  if (opt.a_type && !patch.empty()) {
    out += "<g id=\"a-type\" fill=\"#27ae60\">\n";
    for (const auto& x : patch.vertex_points())
      out += "<circle cx=\"" + X(x[0]) + "\" cy=\"" + Y(x[1]) + "\" r=\"" + r + "\"/>\n";
    out += "</g>\n";
  }
  if (opt.markers && !patch.empty()) {
    auto scan = lonely_vertex_scan(patch);
    out += "<g id=\"markers\">\n";
    for (const auto& x : interior_points(patch))
      out += "<circle class=\"interior\" cx=\"" + X(x[0]) + "\" cy=\"" + Y(x[1]) + "\" r=\"" + r +
             "\" fill=\"#7f8c8d\"/>\n";
    for (const auto* list : {&scan.violations, &scan.boundary_singletons})
      for (const auto& x : *list)
        out += "<circle class=\"lonely\" cx=\"" + X(x[0]) + "\" cy=\"" + Y(x[1]) + "\" r=\"" + detail::fmt6(5 * stroke) +
               "\" fill=\"none\" stroke=\"#e74c3c\" stroke-width=\"" + detail::fmt6(stroke) + "\"/>\n";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace lonely
