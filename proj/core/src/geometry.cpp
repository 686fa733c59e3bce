#include "hcox/geometry.hpp"

#include "hcox/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

namespace hcox {

namespace {

constexpr double kBox = 1e6;
constexpr double kActiveTol = 1e-11;

std::optional<HalfSpace> chart_halfspace(const Chart& chart, const Vec& row) {
  const Vec g = row.cwiseQuotient(chart.functional());
  const double c = 1.0 / static_cast<double>(g.size());
  Vec normal = -(chart.basis().transpose() * g);
  double offset = c * g.sum();
  const double len = normal.norm();
  if (!(len > 1e-14 * g.norm())) return std::nullopt;
  return HalfSpace{normal / len, offset / len};
}

Vec fix_sign(Vec row, const Vec& base) {
  if (row.dot(base) < 0.0) row = -row;
  return row;
}

}  // namespace

Mat simplex_rows(const GramLikeMatrix& a, const Chart& chart) {
  const Mat inv_t = a.entries().inverse().transpose();
  Mat h = inv_t;
  for (int i = 0; i < a.size(); ++i) h.row(i) *= chart.signs()(i);
  return h;
}

ConvexApprox ConvexApprox::build(const Chart& chart, int depth, const std::vector<Vec>& inner_points,
                                 const std::vector<Vec>& rows) {
  ConvexApprox body(chart, depth);
  const int n = chart.n();
  if (n == 2) {
    std::vector<poly::Point> pts;
    pts.reserve(inner_points.size());
    for (const Vec& u : inner_points) pts.push_back(poly::to_point(u));
    const poly::Polygon hull = poly::convex_hull(std::move(pts));
    for (std::size_t k = 0; k < hull.size(); ++k) {
      body.inner_.push_back(poly::to_vec(hull[k]));
      const poly::Point& a = hull[k];
      const poly::Point& b = hull[(k + 1) % hull.size()];
      poly::Point normal(b.y() - a.y(), a.x() - b.x());
      const double len = normal.norm();
      if (len == 0.0) continue;
      normal /= len;
      body.inner_facets_.push_back({poly::to_vec(normal), normal.dot(a)});
    }

    poly::Polygon outer{{-kBox, -kBox}, {kBox, -kBox}, {kBox, kBox}, {-kBox, kBox}};
    std::vector<std::pair<Vec, HalfSpace>> kept;
    for (const Vec& row : rows) {
      auto hs = chart_halfspace(chart, row);
      if (!hs) continue;
      const poly::Point a = poly::to_point(hs->normal);
      bool redundant = true;
      for (const poly::Point& v : outer)
        if (!(a.dot(v) - hs->offset < 0.0)) {
          redundant = false;
          break;
        }
      if (redundant) continue;
      outer = poly::clip(outer, a, hs->offset);
      kept.emplace_back(row, *hs);
      if (outer.size() < 3) throw GeometryError("outer body collapsed while clipping");
    }
    // Second pass from a box fitted to the first.
    double reach = 0.0;
    for (const poly::Point& v : outer) reach = std::max(reach, v.cwiseAbs().maxCoeff());
    const double box = 2.0 * reach + 1.0;
    if (box < kBox) {
      outer = {{-box, -box}, {box, -box}, {box, box}, {-box, box}};
      for (auto& [row, hs] : kept) outer = poly::clip(outer, poly::to_point(hs.normal), hs.offset);
      if (outer.size() < 3) throw GeometryError("outer body collapsed while clipping");
    }
    for (const poly::Point& v : outer) body.outer_vertices_.push_back(poly::to_vec(v));
    for (auto& [row, hs] : kept) {
      const poly::Point a = poly::to_point(hs.normal);
      double closest = std::numeric_limits<double>::infinity();
      for (const poly::Point& v : outer) closest = std::min(closest, std::abs(a.dot(v) - hs.offset));
      if (closest <= kActiveTol * (1.0 + std::abs(hs.offset))) {
        body.rows_.push_back(row);
        body.outer_.push_back(hs);
      }
    }
  } else {
    body.inner_ = inner_points;
    std::vector<Vec> s_vertices;
    std::set<std::vector<long long>> seen;
    for (const Vec& row : rows) {
      auto hs = chart_halfspace(chart, row);
      if (!hs) continue;
      std::vector<long long> key;
      for (Eigen::Index k = 0; k < hs->normal.size(); ++k) key.push_back(std::llround(hs->normal(k) * 1e12));
      key.push_back(std::llround(hs->offset * 1e12));
      if (!seen.insert(key).second) continue;
      body.rows_.push_back(row);
      body.outer_.push_back(*hs);
    }
  }
  if (body.outer_.empty()) throw GeometryError("outer body has no constraints");
  return body;
}

double ConvexApprox::containment_slack() const {
  double worst = std::numeric_limits<double>::infinity();
  for (const Vec& u : inner_)
    for (const HalfSpace& hs : outer_) worst = std::min(worst, hs.slack(u));
  return worst;
}

bool ConvexApprox::contains(Side side, const Vec& u, double tol) const {
  if (side == Side::Outer) {
    for (const HalfSpace& hs : outer_)
      if (hs.slack(u) < -tol) return false;
    return true;
  }
  if (n() == 2) {
    for (const HalfSpace& hs : inner_facets_)
      if (hs.slack(u) < -tol) return false;
    return true;
  }
  const int k = static_cast<int>(inner_.size()), dim = n();
  Mat a(dim + 1, k);
  for (int j = 0; j < k; ++j) {
    a.col(j).head(dim) = inner_[j];
    a(dim, j) = 1.0;
  }
  Vec b(dim + 1);
  b.head(dim) = u;
  b(dim) = 1.0;
  return lp::feasible(a, b) == lp::Status::Optimal;
}

poly::Polygon ConvexApprox::inner_polygon() const {
  poly::Polygon p;
  if (n() != 2) return p;
  for (const Vec& u : inner_) p.push_back(poly::to_point(u));
  return p;
}

poly::Polygon ConvexApprox::outer_polygon() const {
  poly::Polygon p;
  for (const Vec& u : outer_vertices_) p.push_back(poly::to_point(u));
  return p;
}

ConvexApprox build_approx(const TransportedBall& tb, const VertexSet& vs, const Chart& chart, int depth) {
  const OrbitBall& ball = tb.ball();
  if (depth < 0 || depth > ball.depth()) depth = ball.depth();
  std::vector<Vec> inner;
  std::size_t degenerate = 0;
  for (const OrbitVertex& v : vs.vertices) {
    if (ball.length(v.representative) > depth) continue;
    if (v.degenerate) {
      ++degenerate;
      continue;
    }
    inner.push_back(v.point);
  }
  const Mat h = simplex_rows(tb.reflections().source(), chart);
  const Vec base = chart.base_point();
  std::vector<Vec> rows;
  const std::size_t end = ball.sphere_begin(depth + 1);
  rows.reserve(end * static_cast<std::size_t>(tb.rank()));
  for (std::size_t e = 0; e < end; ++e) {
    const Mat hg = h * tb.inverse(e);
    for (int i = 0; i < tb.rank(); ++i) rows.push_back(fix_sign(hg.row(i).transpose(), base));
  }
  ConvexApprox body = ConvexApprox::build(chart, depth, inner, rows);
  body.set_degenerate_count(degenerate);
  return body;
}

ConvexApprox build_approx(const TransportedBall& tb, const Chart& chart, int depth) {
  return build_approx(tb, vertex_orbits(tb, chart), chart, depth);
}

ConvexApprox simplex_body(const Chart& chart) {
  std::vector<Vec> inner, rows;
  const int s = chart.n() + 1;
  for (int k = 0; k < s; ++k) {
    inner.push_back(chart.vertex(k));
    rows.push_back(Vec::Unit(s, k));
  }
  return ConvexApprox::build(chart, 0, inner, rows);
}

ConvexApprox symmetrize(const ConvexApprox& body, int i, const ReflectionSet& r_t) {
  const Chart& chart = body.chart();
  std::vector<Vec> inner = body.inner_points();
  for (const Vec& u : body.inner_points()) {
    Vec h = chart.from_chart(u);
    r_t.apply(i, h);
    inner.push_back(chart.to_chart(h));
  }
  const Vec base = chart.base_point();
  std::vector<Vec> rows = body.outer_rows();
  for (const Vec& row : body.outer_rows()) {
    const Vec image = (row.transpose() * r_t.matrix(i)).transpose();
    rows.push_back(fix_sign(image, base));
  }
  ConvexApprox out = ConvexApprox::build(chart, body.depth(), inner, rows);
  out.set_degenerate_count(body.degenerate_count());
  return out;
}

namespace {

double halfspace_exit(const std::vector<HalfSpace>& hs, const Vec& x, const Vec& v) {
  double best = std::numeric_limits<double>::infinity();
  for (const HalfSpace& h : hs) {
    const double slack = h.slack(x);
    if (!(slack > 0.0)) throw GeometryError("ray_exit: point is not strictly inside the body");
    const double rate = h.normal.dot(v);
    if (rate > 0.0) best = std::min(best, slack / rate);
  }
  if (!std::isfinite(best)) throw GeometryError("ray_exit: ray does not leave the body");
  return best;
}

double lp_exit(const ConvexApprox& body, const Vec& x, const Vec& v) {
  const auto& pts = body.inner_points();
  const int k = static_cast<int>(pts.size()), dim = body.n();
  Mat a(dim + 1, k + 1);
  for (int j = 0; j < k; ++j) {
    a.col(j).head(dim) = pts[j];
    a(dim, j) = 1.0;
  }
  a.col(k).head(dim) = -v;
  a(dim, k) = 0.0;
  Vec b(dim + 1);
  b.head(dim) = x;
  b(dim) = 1.0;
  Vec c = Vec::Zero(k + 1);
  c(k) = 1.0;
  const lp::Result res = lp::maximize(c, a, b);
  if (res.status == lp::Status::Optimal) {
    if (!(res.value > 0.0)) throw GeometryError("ray_exit: point is not strictly inside the inner body");
    return res.value;
  }
  if (res.status == lp::Status::Infeasible)
    throw GeometryError("ray_exit: point is not inside the inner body");
  // Bisection on membership.
  double lo = 0.0, hi = halfspace_exit(body.outer(), x, v);
  if (!body.contains(Side::Inner, x)) throw GeometryError("ray_exit: point is not inside the inner body");
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (body.contains(Side::Inner, x + mid * v)) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace

double ray_exit(const ConvexApprox& body, Side side, const Vec& x, const Vec& v) {
  if (x.size() != body.n() || v.size() != body.n()) throw InputError("ray_exit: dimension mismatch");
  if (!(v.norm() > 0.0)) throw GeometryError("ray_exit: zero direction");
  if (side == Side::Outer) return halfspace_exit(body.outer(), x, v);
  if (body.n() == 2) return halfspace_exit(body.inner_facets(), x, v);
  return lp_exit(body, x, v);
}

double distance_to_simplex(const Vec& u, const std::vector<Vec>& vertices) {
  const int r = static_cast<int>(vertices.size());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    std::vector<int> face;
    for (int k = 0; k < r; ++k)
      if ((mask >> k) & 1u) face.push_back(k);
    const Vec& v0 = vertices[face[0]];
    const int m = static_cast<int>(face.size()) - 1;
    Vec q = v0;
    bool inside = true;
    if (m > 0) {
      Mat e(u.size(), m);
      for (int k = 0; k < m; ++k) e.col(k) = vertices[face[k + 1]] - v0;
      const Vec mu = e.colPivHouseholderQr().solve(u - v0);
      inside = (mu.array() >= -1e-12).all() && mu.sum() <= 1.0 + 1e-12;
      q = v0 + e * mu;
    }
    if (inside) best = std::min(best, (u - q).norm());
  }
  return best;
}

HausdorffPair hausdorff_to_P(const ConvexApprox& body, int samples) {
  const Chart& chart = body.chart();
  std::vector<Vec> p;
  for (int k = 0; k <= chart.n(); ++k) p.push_back(chart.vertex(k));
  HausdorffPair out;
  for (const Vec& u : body.inner_points()) out.inner = std::max(out.inner, distance_to_simplex(u, p));
  if (body.n() == 2) {
    for (const Vec& u : body.outer_vertices()) out.outer = std::max(out.outer, distance_to_simplex(u, p));
    return out;
  }
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  const Vec x = chart.barycenter();
  for (int s = 0; s < samples; ++s) {
    Vec v(body.n());
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = gauss(rng);
    const double tau = ray_exit(body, Side::Outer, x, v);
    out.outer = std::max(out.outer, distance_to_simplex(x + tau * v, p));
  }
  out.samples = samples;
  return out;
}

double hausdorff_inner_outer(const ConvexApprox& body) {
  if (body.n() != 2) throw InputError("hausdorff_inner_outer is only exact for n = 2");
  return poly::hausdorff(body.inner_polygon(), body.outer_polygon());
}

StarNeighborhood star_neighborhood(const VertexSet& vs, std::size_t vertex, const TranslateSet& translates,
                                   LinkPolicy policy) {
  if (vs.rank != 3) throw InputError("star_neighborhood is implemented for n = 2");
  const OrbitVertex& v = vs.vertices.at(vertex);
  if (v.degenerate) throw GeometryError("star_neighborhood: degenerate vertex");
  StarNeighborhood out;
  bool missing = !v.complete_link;

  std::map<std::int64_t, std::vector<std::int64_t>> adj;
  std::unordered_map<std::int64_t, Vec> where;
  for (std::size_t g : v.incident) {
    const std::int64_t slot = g < translates.slot.size() ? translates.slot[g] : -1;
    if (slot < 0) {
      missing = true;
      continue;
    }
    const TranslatedSimplex& tri = translates.simplices[static_cast<std::size_t>(slot)];
    std::int64_t ends[2];
    int c = 0;
    for (int k = 0; k < 3; ++k) {
      if (k == v.label) continue;
      ends[c] = vs.id(g, k);
      where[ends[c]] = tri.vertices[k];
      ++c;
    }
    adj[ends[0]].push_back(ends[1]);
    adj[ends[1]].push_back(ends[0]);
    ++out.triangles;
  }
  if (missing && policy == LinkPolicy::Require) throw GeometryError("star_neighborhood: incomplete link");
  if (adj.empty()) throw GeometryError("star_neighborhood: no simplices around the vertex");

  std::int64_t start = adj.begin()->first;
  bool open = false;
  for (const auto& [id, nb] : adj) {
    if (nb.size() > 2) throw GeometryError("star_neighborhood: link is not a curve");
    if (nb.size() == 1) {
      start = id;
      open = true;
      break;
    }
  }
  std::vector<std::int64_t> order{start};
  std::int64_t prev = -1, cur = start;
  while (true) {
    const auto& nb = adj[cur];
    std::int64_t next = -1;
    for (std::int64_t c : nb)
      if (c != prev) {
        next = c;
        break;
      }
    if (next < 0 || next == start) break;
    order.push_back(next);
    prev = cur;
    cur = next;
    if (order.size() > adj.size()) throw GeometryError("star_neighborhood: link does not close");
  }
  out.complete = !open && !missing && order.size() == adj.size();
  for (std::int64_t id : order) out.boundary.push_back(where[id]);
  if (open) out.boundary.push_back(v.point);

  poly::Polygon pg;
  for (const Vec& u : out.boundary) pg.push_back(poly::to_point(u));
  if (poly::signed_area(pg) < 0) {
    std::reverse(pg.begin(), pg.end());
    std::reverse(out.boundary.begin(), out.boundary.end());
  }
  out.min_turn = std::numeric_limits<double>::infinity();
  const std::size_t m = pg.size();
  for (std::size_t k = 0; k < m; ++k) {
    const poly::Point& a = pg[(k + m - 1) % m];
    const poly::Point& b = pg[k];
    const poly::Point& c = pg[(k + 1) % m];
    const double denom = (b - a).norm() * (c - b).norm();
    const double s = denom > 0 ? poly::cross(a, b, c) / denom : 0.0;
    out.min_turn = std::min(out.min_turn, s);
  }
  out.convex = out.min_turn >= -1e-10;
  return out;
}

}  // namespace hcox
