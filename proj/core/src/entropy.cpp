#include "hcox/entropy.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

namespace hcox {

SlopeFit fit_log_slope(const std::vector<double>& radii, const std::vector<double>& counts) {
  if (radii.size() != counts.size()) throw InputError("fit_log_slope: size mismatch");
  const std::size_t m = radii.size();
  if (m < 3) throw InputError("fit_log_slope: need at least three points");
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (!(counts[k] > 0)) throw InputError("fit_log_slope: counts must be positive");
    sx += radii[k];
    sy += std::log(counts[k]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (radii[k] - mx) * (radii[k] - mx);
    sxy += (radii[k] - mx) * (std::log(counts[k]) - my);
  }
  if (!(sxx > 0)) throw InputError("fit_log_slope: radii are constant");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = static_cast<int>(m);
  double rss = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = std::log(counts[k]) - (f.intercept + f.slope * radii[k]);
    rss += r * r;
  }
  f.stderr_slope = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  return f;
}

std::vector<DistanceBound> orbit_distances(const TransportedBall& tb, const ConvexApprox& body, const Vec& base,
                                           unsigned threads) {
  std::vector<DistanceBound> out(tb.size());
  const FramedPoint x = frame_point(base);
  detail::parallel_for(
      tb.size(), detail::resolve_threads(threads),
      [&](unsigned, std::size_t lo, std::size_t hi) {
        for (std::size_t e = lo; e < hi; ++e) {
          if (e == 0) continue;
          const Vec gx = tb.forward(e) * base;
          out[e] = distance_framed(body, x, frame_point(gx, tb.inverse(e), base));
        }
      },
      256);
  return out;
}

namespace {

std::vector<double> sorted_side(const std::vector<DistanceBound>& d, bool lower) {
  std::vector<double> v(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) v[k] = lower ? d[k].lower : d[k].upper;
  std::sort(v.begin(), v.end());
  return v;
}

std::size_t count_within(const std::vector<double>& sorted, double r) {
  return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), r) - sorted.begin());
}

std::vector<double> grid(const GrowthWindow& w, int points) {
  std::vector<double> r(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) r[static_cast<std::size_t>(k)] = w.r_min + (w.r_max - w.r_min) * k / (points - 1);
  return r;
}

}  // namespace

EntropyEstimate orbit_growth(const TransportedBall& tb, const ConvexApprox& body, const Vec& base,
                             const EntropyOptions& options) {
  if (options.grid_points < 3) throw InputError("orbit_growth: grid needs at least three points");
  const OrbitBall& ball = tb.ball();
  const Chart& chart = body.chart();
  const std::vector<DistanceBound> d = orbit_distances(tb, body, base, options.threads);
  const std::vector<double> lo = sorted_side(d, true), up = sorted_side(d, false);

  EntropyEstimate est;
  est.ball_size = tb.size();

  // Any element outside the ball is at least this far: the segment to it crosses a tile of the outer sphere.
  double r_p = 0.0;
  const Vec base_chart = chart.to_chart(base);
  for (int k = 0; k <= chart.n(); ++k) {
    try {
      r_p = std::max(r_p, distance(body, base_chart, chart.vertex(k)).upper);
    } catch (const GeometryError&) {
      r_p = std::numeric_limits<double>::infinity();
    }
  }
  double outer_min = std::numeric_limits<double>::infinity();
  for (std::size_t e = ball.sphere_begin(ball.depth()); e < ball.size(); ++e) outer_min = std::min(outer_min, d[e].lower);
  est.completeness_radius = std::max(0.0, outer_min - r_p);

  const double cap = options.truncation_fraction * static_cast<double>(tb.size());
  // counts reach the cap first at lo[m]
  const auto m = static_cast<std::size_t>(std::max(0.0, std::ceil(cap) - 1.0));
  est.truncation_radius = m < lo.size() ? std::nextafter(lo[m], 0.0) : lo.back();

  std::ostringstream note;
  note << "windowed slope of log ball counts; approximates the limsup growth rate";
  if (options.window) {
    est.window = *options.window;
    if (!(est.window.r_min >= 0.0 && est.window.r_min < est.window.r_max))
      throw InputError("orbit_growth: window must satisfy 0 <= a < b");
    if (static_cast<double>(count_within(lo, est.window.r_max)) >= cap)
      throw GuardError("orbit_growth: window exceeds the truncation guard (count at R_max reaches " +
                       std::to_string(options.truncation_fraction) + " of the ball)");
    if (est.window.r_max > est.completeness_radius) note << "; R_max beyond the completeness radius";
  } else {
    const double rc = std::min(est.completeness_radius, est.truncation_radius);
    if (!(rc > 0.0)) throw GuardError("orbit_growth: ball too small for any complete window");
    est.window = {0.5 * rc, rc};
  }

  est.radii = grid(est.window, options.grid_points);
  std::vector<double> cl, cu;
  for (double r : est.radii) {
    est.counts_lower.push_back(count_within(lo, r));
    est.counts_upper.push_back(count_within(up, r));
    cl.push_back(static_cast<double>(est.counts_lower.back()));
    cu.push_back(static_cast<double>(est.counts_upper.back()));
  }
  est.fit_lower = fit_log_slope(est.radii, cl);
  est.fit_upper = fit_log_slope(est.radii, cu);
  const double s1 = est.fit_lower.slope, s2 = est.fit_upper.slope;
  const double se = std::max(est.fit_lower.stderr_slope, est.fit_upper.stderr_slope);
  est.delta_hat = 0.5 * (s1 + s2);
  est.delta_low = std::min(s1, s2) - se;
  est.delta_high = std::max(s1, s2) + se;
  est.count_at_rmax = est.counts_lower.back();
  for (const DistanceBound& b : d)
    if (b.upper <= est.window.r_max) est.gap_max = std::max(est.gap_max, b.gap());
  est.note = note.str();
  return est;
}

namespace {

Vec offset_point(int rank, int i, int j, double eps, bool near_i) {
  Vec a = Vec::Zero(rank);
  a(i) = near_i ? 1.0 - eps : eps;
  a(j) = near_i ? eps : 1.0 - eps;
  return a;
}

}  // namespace

DistanceBound measure_edge(const TransportedBall& tb, const ConvexApprox& body, const SkeletonEdge& e, double epsilon) {
  const Chart& chart = body.chart();
  const int rank = tb.rank();
  // homogeneous points of P with the given barycentric coordinates
  auto lift = [&](const Vec& lambda) -> Vec { return lambda.cwiseQuotient(chart.functional()); };
  const Vec a = lift(offset_point(rank, e.i, e.j, epsilon, true));
  const Vec b = lift(offset_point(rank, e.i, e.j, epsilon, false));
  const Mat g = tb.forward(e.element);
  const Mat gi = tb.inverse(e.element);
  return distance_framed(body, frame_point(g * a, gi, a), frame_point(g * b, gi, b));
}

MetricGraph build_skeleton(const TransportedBall& tb, const ConvexApprox& body, double epsilon) {
  const Chart& chart = body.chart();
  MetricGraph g{vertex_orbits(tb, chart), {}, {}, 0, epsilon, edge_lengths(body, epsilon)};
  const int rank = tb.rank();
  std::map<std::pair<int, int>, DistanceBound> ref;
  for (const EdgeLength& e : g.reference.edges) ref[{e.i, e.j}] = e.length;

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t el = 0; el < tb.size(); ++el)
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        const auto u = static_cast<std::size_t>(g.vertices.id(el, i));
        const auto v = static_cast<std::size_t>(g.vertices.id(el, j));
        const auto key = std::minmax(u, v);
        if (seen.count(key)) continue;
        seen.emplace(key, g.edges.size());
        g.edges.push_back({u, v, i, j, el, ref.at({i, j})});
      }
  g.adjacency.assign(g.vertices.vertices.size(), {});
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    g.adjacency[g.edges[k].u].emplace_back(g.edges[k].v, k);
    g.adjacency[g.edges[k].v].emplace_back(g.edges[k].u, k);
  }
  g.base = static_cast<std::size_t>(g.vertices.id(0, 0));
  return g;
}

double edge_length(const SkeletonEdge& e, LengthMode mode) {
  switch (mode) {
    case LengthMode::Unit: return 1.0;
    case LengthMode::Lower: return e.length.lower;
    case LengthMode::Upper: return e.length.upper;
  }
  return 1.0;
}

ShortestPaths shortest_paths(const MetricGraph& g, std::size_t source, LengthMode mode, double scale) {
  const std::size_t nv = g.adjacency.size();
  if (source >= nv) throw InputError("shortest_paths: source out of range");
  ShortestPaths sp;
  sp.dist.assign(nv, std::numeric_limits<double>::infinity());
  sp.hops.assign(nv, -1);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  sp.dist[source] = 0.0;
  sp.hops[source] = 0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    const auto [du, u] = pq.top();
    pq.pop();
    if (du > sp.dist[u]) continue;
    for (const auto& [v, ei] : g.adjacency[u]) {
      const double len = scale * edge_length(g.edges[ei], mode);
      if (!(len > 0.0)) throw GeometryError("shortest_paths: nonpositive edge length");
      if (du + len < sp.dist[v]) {
        sp.dist[v] = du + len;
        sp.hops[v] = sp.hops[u] + 1;
        pq.emplace(sp.dist[v], v);
      }
    }
  }
  sp.trusted_radius = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < nv; ++v) {
    if (!std::isfinite(sp.dist[v])) throw GeometryError("shortest_paths: graph is disconnected");
    if (!g.vertices.vertices[v].complete_link) sp.trusted_radius = std::min(sp.trusted_radius, sp.dist[v]);
  }
  return sp;
}

GraphEntropy graph_entropy(const MetricGraph& g, GraphEntropyMode mode, double length_scale, int grid_points) {
  if (grid_points < 3) throw InputError("graph_entropy: grid needs at least three points");
  GraphEntropy out;
  out.mode = mode;
  out.grid_points = grid_points;
  std::vector<ShortestPaths> runs;
  if (mode == GraphEntropyMode::Unit) {
    runs.push_back(shortest_paths(g, g.base, LengthMode::Unit, length_scale));
  } else {
    runs.push_back(shortest_paths(g, g.base, LengthMode::Lower, length_scale));
    runs.push_back(shortest_paths(g, g.base, LengthMode::Upper, length_scale));
  }
  double r_star = std::numeric_limits<double>::infinity();
  for (const ShortestPaths& sp : runs) r_star = std::min(r_star, sp.trusted_radius);
  if (!(r_star > 0.0) || !std::isfinite(r_star)) throw GuardError("graph_entropy: no trusted radius");
  out.window = {0.5 * r_star, std::nextafter(r_star, 0.0)};
  const std::vector<double> radii = grid(out.window, grid_points);
  std::vector<double> slopes;
  for (const ShortestPaths& sp : runs) {
    std::vector<double> sorted = sp.dist;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> counts;
    for (double r : radii) counts.push_back(static_cast<double>(count_within(sorted, r)));
    const SlopeFit f = fit_log_slope(radii, counts);
    slopes.push_back(f.slope);
    out.stderr_slope = std::max(out.stderr_slope, f.stderr_slope);
  }
  out.slope_high = slopes.front();
  out.slope_low = slopes.back();
  out.slope = 0.5 * (out.slope_low + out.slope_high);
  return out;
}

}  // namespace hcox
