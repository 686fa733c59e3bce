#pragma once

#include "hcox/geometry.hpp"
#include "hcox/orbit.hpp"

#include <string>

namespace hcox {

struct RenderOptions {
  int size = 1000;       // square viewBox side
  double margin = 0.03;  // fraction of the view left around the inner hull
  bool vertex_dots = true;
};

struct RenderStats {
  std::size_t polygons = 0;
  std::size_t skipped = 0;  // degenerate translates
  std::size_t dots = 0;
};

// n = 2: translated simplices as filled polygons (alternating by word-length parity), vertices
// colored by orbit label, inner hull and outer boundary as outlines.
std::string render_svg(const TransportedBall& tb, const TranslateSet& translates, const VertexSet& vs,
                       const ConvexApprox& body, const RenderOptions& options = {}, RenderStats* stats = nullptr);

}  // namespace hcox
