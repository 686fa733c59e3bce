#include "hcox/render.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hcox {

namespace {

struct View {
  double x0 = 0, y0 = 0, scale = 1;
  int size = 1000;

  std::string point(const Vec& u) const {
    char buf[64];
    // y axis points down in SVG
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", (u(0) - x0) * scale, size - (u(1) - y0) * scale);
    return buf;
  }
};

View fit(const std::vector<Vec>& pts, const RenderOptions& o) {
  double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  double hi[2] = {-lo[0], -lo[1]};
  for (const Vec& p : pts)
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], p(k));
      hi[k] = std::max(hi[k], p(k));
    }
  const double span = std::max({hi[0] - lo[0], hi[1] - lo[1], 1e-12});
  View v;
  v.size = o.size;
  v.scale = o.size * (1.0 - 2.0 * o.margin) / span;
  const double pad = o.size * o.margin / v.scale;
  v.x0 = lo[0] - pad - 0.5 * (span - (hi[0] - lo[0]));
  v.y0 = lo[1] - pad - 0.5 * (span - (hi[1] - lo[1]));
  return v;
}

std::string closed_path(const View& v, const std::vector<Vec>& pts) {
  std::string d;
  for (std::size_t k = 0; k < pts.size(); ++k) d += (k ? " L" : "M") + v.point(pts[k]);
  return d + " Z";
}

}  // namespace

std::string render_svg(const TransportedBall& tb, const TranslateSet& translates, const VertexSet& vs,
                       const ConvexApprox& body, const RenderOptions& options, RenderStats* stats) {
  if (body.n() != 2) throw InputError("render_svg: only n = 2 can be drawn");
  const View view = fit(body.inner_points(), options);
  static constexpr std::array<const char*, 2> fills = {"#f4f1e8", "#3b4a6b"};
  static constexpr std::array<const char*, 3> dots = {"#d1495b", "#edae49", "#00798c"};

  RenderStats st;
  st.skipped = translates.degenerate;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << options.size << ' ' << options.size
      << "\" width=\"" << options.size << "\" height=\"" << options.size << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << options.size << "\" height=\"" << options.size
      << "\" fill=\"white\"/>\n<g id=\"tiles\" stroke=\"#222\" stroke-width=\"0.15\">\n";
  for (const TranslatedSimplex& s : translates.simplices) {
    svg << "<polygon fill=\"" << fills[static_cast<std::size_t>(tb.ball().length(s.element) % 2)] << "\" points=\"";
    for (std::size_t k = 0; k < s.vertices.size(); ++k) svg << (k ? " " : "") << view.point(s.vertices[k]);
    svg << "\"/>\n";
    ++st.polygons;
  }
  svg << "</g>\n";
  if (options.vertex_dots) {
    svg << "<g id=\"vertices\">\n";
    for (const OrbitVertex& w : vs.vertices) {
      if (w.degenerate) continue;
      const std::string p = view.point(w.point);
      const auto comma = p.find(',');
      svg << "<circle cx=\"" << p.substr(0, comma) << "\" cy=\"" << p.substr(comma + 1) << "\" r=\"1.2\" fill=\""
          << dots[static_cast<std::size_t>(w.label % 3)] << "\"/>\n";
      ++st.dots;
    }
    svg << "</g>\n";
  }
  svg << "<path id=\"inner-hull\" fill=\"none\" stroke=\"#2a9d8f\" stroke-width=\"1.5\" d=\""
      << closed_path(view, body.inner_points()) << "\"/>\n";
  svg << "<path id=\"outer-boundary\" fill=\"none\" stroke=\"#e63946\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" d=\""
      << closed_path(view, body.outer_vertices()) << "\"/>\n";
  svg << "</svg>\n";
  if (stats) *stats = st;
  return svg.str();
}

}  // namespace hcox
