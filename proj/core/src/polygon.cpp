#include "hcox/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcox::poly {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

Polygon convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon h(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Polygon clip(const Polygon& poly, const Point& a, double b) {
  Polygon out;
  const std::size_t n = poly.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    const double dp = a.dot(p) - b, dq = a.dot(q) - b;
    if (dp <= 0) out.push_back(p);
    if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
  }
  // Drop consecutive duplicates created by clipping through a vertex.
  Polygon clean;
  for (const Point& p : out)
    if (clean.empty() || (p - clean.back()).norm() > 1e-15) clean.push_back(p);
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-15) clean.pop_back();
  return clean;
}

Polygon intersect(const Polygon& p, const Polygon& q) {
  Polygon out = p;
  for (std::size_t i = 0; i < q.size() && !out.empty(); ++i) {
    const Point& a = q[i];
    const Point& b = q[(i + 1) % q.size()];
    const Point normal(b.y() - a.y(), a.x() - b.x());
    out = clip(out, normal, normal.dot(a));
  }
  return out;
}

double signed_area(const Polygon& poly) {
  double s = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double s = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

bool contains(const Polygon& poly, const Point& p, double tol) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    const double len = (b - a).norm();
    if (len == 0.0) continue;
    if (cross(a, b, p) / len < -tol) return false;
  }
  return true;
}

double distance(const Point& p, const Polygon& poly) {
  if (poly.size() >= 3 && contains(poly, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

double hausdorff(const Polygon& p, const Polygon& q) {
  double h = 0.0;
  for (const Point& v : p) h = std::max(h, distance(v, q));
  for (const Point& v : q) h = std::max(h, distance(v, p));
  return h;
}

}  // namespace hcox::poly
