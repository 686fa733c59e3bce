#pragma once

#include "hcox/types.hpp"

#include <vector>

namespace hcox::poly {

using Point = Eigen::Vector2d;
using Polygon = std::vector<Point>;  // convex, counter-clockwise

// Andrew's monotone chain; collinear points dropped.
Polygon convex_hull(std::vector<Point> pts);

// Part of a convex polygon with a.x <= b.
Polygon clip(const Polygon& poly, const Point& a, double b);

Polygon intersect(const Polygon& p, const Polygon& q);

double signed_area(const Polygon& poly);
double cross(const Point& o, const Point& a, const Point& b);

double segment_distance(const Point& p, const Point& a, const Point& b);
bool contains(const Polygon& poly, const Point& p, double tol = 0.0);
// 0 inside the polygon, else distance to its boundary.
double distance(const Point& p, const Polygon& poly);
// Hausdorff distance between convex polygons; attained at vertices.
double hausdorff(const Polygon& p, const Polygon& q);

inline Point to_point(const Vec& v) { return Point(v(0), v(1)); }
inline Vec to_vec(const Point& p) {
  Vec v(2);
  v << p.x(), p.y();
  return v;
}

}  // namespace hcox::poly
