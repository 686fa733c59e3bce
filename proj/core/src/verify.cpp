#include "hcox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hcox {

Vec lift_barycentric(const Chart& chart, const Vec& lambda) { return lambda.cwiseQuotient(chart.functional()); }

DistanceBound vertex_distance(const TransportedBall& tb, const ConvexApprox& body, const VertexSet& vs, std::size_t u,
                              std::size_t v) {
  if (u == v) return {0.0, 0.0};
  auto framed = [&](std::size_t id) {
    const OrbitVertex& w = vs.vertices.at(id);
    const Vec e = Vec::Unit(tb.rank(), w.label);
    return frame_point(tb.forward(w.representative) * e, tb.inverse(w.representative), e);
  };
  return distance_framed(body, framed(u), framed(v));
}

namespace {

double edge_deficit(const ConvexApprox& body, double epsilon) {
  const Chart& chart = body.chart();
  const int s = chart.n() + 1;
  double worst = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      Vec a = Vec::Zero(s);
      a(i) = 1.0 - epsilon;
      a(j) = epsilon;
      worst = std::max(worst, distance(body, chart.vertex(i), chart.from_barycentric(a)).upper);
    }
  return 2.0 * worst;
}

}  // namespace

MetricComparisonReport verify_metric_comparison(const TransportedBall& tb, const ConvexApprox& body,
                                                const MetricGraph& g, int samples, std::uint64_t seed) {
  MetricComparisonReport rep;
  const double deficit = edge_deficit(body, g.epsilon);
  double edge_gap = 0.0;
  for (const SkeletonEdge& e : g.edges) edge_gap = std::max(edge_gap, e.length.gap());

  std::mt19937_64 rng(seed);
  // sources in the central half of the trusted ball around the base vertex
  const ShortestPaths from_base = shortest_paths(g, g.base, LengthMode::Upper);
  std::vector<std::size_t> inner;
  for (std::size_t v = 0; v < g.vertices.vertices.size(); ++v)
    if (g.vertices.vertices[v].complete_link && !g.vertices.vertices[v].degenerate &&
        from_base.dist[v] <= 0.5 * from_base.trusted_radius)
      inner.push_back(v);
  if (inner.empty()) throw GuardError("verify_metric_comparison: no vertex with a complete link");

  const int per_source = 20;
  while (static_cast<int>(rep.pairs.size()) < samples) {
    const std::size_t src = inner[std::uniform_int_distribution<std::size_t>(0, inner.size() - 1)(rng)];
    const ShortestPaths lo = shortest_paths(g, src, LengthMode::Lower);
    const ShortestPaths up = shortest_paths(g, src, LengthMode::Upper);
    const double trusted = std::min(lo.trusted_radius, up.trusted_radius);
    std::vector<std::size_t> targets;
    for (std::size_t v = 0; v < lo.dist.size(); ++v)
      if (up.dist[v] < trusted && !g.vertices.vertices[v].degenerate) targets.push_back(v);
    if (targets.empty()) continue;
    for (int k = 0; k < per_source && static_cast<int>(rep.pairs.size()) < samples; ++k) {
      const std::size_t dst = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
      MetricPair p;
      p.u = src;
      p.v = dst;
      p.ambient = vertex_distance(tb, body, g.vertices, src, dst);
      p.graph = {lo.dist[dst], up.dist[dst]};
      p.ratio = p.ambient.lower > 0.0 ? p.graph.upper / p.ambient.lower : (p.graph.upper == 0.0 ? 1.0 : 0.0);
      if (src == dst) p.ratio = 1.0;
      const double allowance = 2.0 * std::max(p.ambient.gap(), edge_gap) + lo.hops[dst] * deficit;
      const double excess = p.ambient.lower - p.graph.lower - allowance;
      rep.worst_deficit = std::max(rep.worst_deficit, excess);
      if (excess > 0.0) ++rep.violations;
      if (p.ambient.lower > 0.0) rep.c_prime = std::max(rep.c_prime, p.ratio);
      rep.pairs.push_back(p);
    }
  }
  rep.ok = rep.violations == 0 && std::isfinite(rep.c_prime);
  return rep;
}

namespace {

// Barycentric point (1 - s) e_k + s e_i.
Vec along(int rank, int k, int i, double s) {
  Vec v = Vec::Zero(rank);
  v(k) = 1.0 - s;
  v(i) = s;
  return v;
}

Vec proxy(int rank, int k, double epsilon) {
  Vec v = Vec::Constant(rank, epsilon / rank);
  v(k) += 1.0 - epsilon;
  return v;
}

struct Corner {
  int i = 0;  // A = [p_k, p_i], fixed by s_j
  int j = 0;  // B = [p_k, p_j], fixed by s_i
  int m = 0;  // order of s_i s_j
};

Corner corner(const CoxeterGraph& graph, int k) {
  if (graph.n() != 2) throw InputError("vertex ratio checks are implemented for n = 2");
  Corner c{(k + 1) % 3, (k + 2) % 3, 0};
  const EdgeWeight w = graph.weight(c.i, c.j);
  if (w.is_infinite()) throw InputError("vertex ratio checks need a finite weight at the vertex");
  c.m = w.value();
  return c;
}

}  // namespace

VertexRatioReport verify_prop_main(const ConvexApprox& body, const CoxeterGraph& j, int samples, std::uint64_t seed,
                                   double epsilon, double slack) {
  const Chart& chart = body.chart();
  if (chart.n() != 2) throw InputError("verify_prop_main: n = 2 only");
  VertexRatioReport rep;
  rep.epsilon = epsilon;
  rep.slack = slack;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = epsilon, hi = 1.0 - epsilon;
  auto draw = [&] {
    // half uniform, half log-uniform toward E
    if (unit(rng) < 0.5) return lo + (hi - lo) * unit(rng);
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(rng));
  };
  for (int s = 0; s < samples; ++s) {
    VertexRatioSample v;
    v.vertex = static_cast<int>(rng() % 3);
    const Corner c = corner(j, v.vertex);
    v.a = draw();
    v.b = draw();
    const Vec x = chart.from_barycentric(along(3, v.vertex, c.i, v.a));
    const Vec y = chart.from_barycentric(along(3, v.vertex, c.j, v.b));
    const Vec e = chart.from_barycentric(proxy(3, v.vertex, epsilon));
    v.dxe = distance(body, x, e);
    v.dye = distance(body, y, e);
    v.dxy = distance(body, x, y);
    v.ratio = (v.dxe.upper + v.dye.upper) / v.dxy.lower;
    v.bound = 2.0 * c.m;
    ++rep.samples;
    if (v.ratio > rep.max_ratio) {
      rep.max_ratio = v.ratio;
      rep.worst = v;
    }
    rep.max_excess = std::max(rep.max_excess, v.ratio - v.bound);
  }
  rep.ok = rep.samples > 0 && rep.max_excess <= slack;
  return rep;
}

ChainReport chain_construction(const ConvexApprox& body, const ReflectionSet& r_t, const CoxeterGraph& j, int vertex,
                               double a, double b, double epsilon) {
  const Chart& chart = body.chart();
  if (chart.n() != 2) throw InputError("chain_construction: n = 2 only");
  if (vertex < 0 || vertex > 2) throw InputError("chain_construction: vertex out of range");
  const Corner c = corner(j, vertex);
  ChainReport rep;
  rep.vertex = vertex;
  rep.p = c.m;

  const Vec xh = lift_barycentric(chart, along(3, vertex, c.i, a));
  const Vec yh = lift_barycentric(chart, along(3, vertex, c.j, b));
  const Vec x = chart.to_chart(xh), y = chart.to_chart(yh);
  const Mat& s_a = r_t.matrix(c.j);
  const Mat& s_b = r_t.matrix(c.i);
  rep.dxy = distance(body, x, y);
  rep.gap = rep.dxy.gap();

  Mat g = Mat::Identity(3, 3);
  for (int m = 0; m < c.m; ++m) {
    if (m > 0) g = g * (m % 2 == 1 ? s_b : s_a);
    ChainSegment seg{chart.to_chart(g * xh), chart.to_chart(g * yh), {}};
    seg.length = distance(body, seg.from, seg.to);
    rep.gap = std::max(rep.gap, seg.length.gap());
    rep.segments.push_back(seg);
  }

  // each piece shares one endpoint with the previous one; the free end of the last piece is the terminal point
  Vec free_end = rep.segments.front().to;
  for (std::size_t m = 1; m < rep.segments.size(); ++m) {
    const ChainSegment& s = rep.segments[m];
    const double d_from = (s.from - free_end).norm(), d_to = (s.to - free_end).norm();
    rep.joint_error = std::max(rep.joint_error, std::min(d_from, d_to));
    free_end = d_from <= d_to ? s.to : s.from;
  }
  rep.terminal = free_end;
  rep.chaining_ok = rep.joint_error < 1e-9;

  const double round = 1e-10 * std::max(1.0, rep.dxy.upper);
  const double tol = 2.0 * rep.gap + round;
  rep.lengths_ok = true;
  for (const ChainSegment& s : rep.segments)
    if (std::abs(s.length.lower - rep.dxy.lower) > tol || std::abs(s.length.upper - rep.dxy.upper) > tol)
      rep.lengths_ok = false;
  for (const ChainSegment& s : rep.segments) {
    rep.total.lower += s.length.lower;
    rep.total.upper += s.length.upper;
  }
  rep.total_ok = std::abs(rep.total.lower - c.m * rep.dxy.lower) <= c.m * tol &&
                 std::abs(rep.total.upper - c.m * rep.dxy.upper) <= c.m * tol;

  const Vec e = chart.vertex(vertex);
  const Vec ex = x - e, et = rep.terminal - e;
  const double cross = ex(0) * et(1) - ex(1) * et(0);
  rep.collinearity = std::abs(cross) / (ex.norm() * et.norm());
  rep.opposite = ex.dot(et) < 0.0;
  rep.terminal_ok = rep.collinearity < 1e-9 && rep.opposite;

  rep.dx_terminal = distance(body, x, rep.terminal);
  rep.dx_proxy = distance(body, x, chart.from_barycentric(proxy(3, vertex, epsilon)));
  rep.inequality_ok = c.m * rep.dxy.upper >= rep.dx_terminal.lower - c.m * round &&
                      rep.dx_terminal.lower >= rep.dx_proxy.lower - 2.0 * rep.gap - c.m * round;
  rep.ok = rep.chaining_ok && rep.lengths_ok && rep.total_ok && rep.terminal_ok && rep.inequality_ok;
  return rep;
}

std::vector<Vec> sample_points(const TransportedBall& tb, const Chart& chart, int count, int sample_depth,
                               std::uint64_t seed) {
  const OrbitBall& ball = tb.ball();
  const int d = std::clamp(sample_depth, 0, ball.depth());
  const std::size_t end = ball.sphere_begin(d + 1);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    const std::size_t e = std::uniform_int_distribution<std::size_t>(0, end - 1)(rng);
    Vec lambda(tb.rank());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) lambda(k) = 0.05 + expo(rng);
    lambda /= lambda.sum();
    const Vec h = tb.forward(e) * lift_barycentric(chart, lambda);
    if (chart.degenerate(h)) continue;
    out.push_back(chart.to_chart(h));
  }
  return out;
}

ContractionReport verify_projection_contraction(const TransportedBall& tb, const ConvexApprox& body, int i,
                                                int samples, std::uint64_t seed, int sample_depth) {
  const ReflectionSet& r = tb.reflections();
  const ConvexApprox sym = symmetrize(body, i, r);
  const std::vector<Vec> pts = sample_points(tb, body.chart(), 2 * samples, sample_depth, seed);
  ContractionReport rep;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Vec& x = pts[2 * s];
    const Vec& y = pts[2 * s + 1];
    const Projection px = project(sym, x, i, r), py = project(sym, y, i, r);
    const DistanceBound before = distance(sym, x, y);
    const DistanceBound after = distance(sym, px.point, py.point);
    const double gap = std::max(before.gap(), after.gap());
    rep.max_gap = std::max(rep.max_gap, gap);
    const double excess = after.upper - before.lower - 2.0 * gap;
    rep.worst_excess = std::max(rep.worst_excess, excess);
    if (excess > 1e-12) ++rep.violations;
    ++rep.pairs;
  }
  rep.ok = rep.pairs > 0 && rep.violations == 0;
  return rep;
}

IteratedProjectionReport verify_iterated_projection(const TransportedBall& tb, const ConvexApprox& body,
                                                    const std::vector<int>& indices, int samples, std::uint64_t seed,
                                                    double tol) {
  const Chart& chart = body.chart();
  const ReflectionSet& r = tb.reflections();
  IteratedProjectionReport rep;
  // a point of the common intersection: the face of P spanned by the vertices off every L_i
  Vec w = Vec::Zero(tb.rank());
  for (int k = 0; k < tb.rank(); ++k)
    if (std::find(indices.begin(), indices.end(), k) == indices.end()) w(k) = 1.0;
  if (w.sum() == 0.0) throw InputError("verify_iterated_projection: intersection is empty");
  const Vec base = chart.from_barycentric(w);

  for (const Vec& x : sample_points(tb, chart, samples, 1, seed)) {
    const IteratedProjection it = iterated_project(body, x, indices, r, tol);
    ++rep.runs;
    if (it.converged) ++rep.converged;
    rep.max_observed_ratio = std::max(rep.max_observed_ratio, it.observed_ratio);
    Vec y = x;
    DistanceBound prev = distance(body, base, y);
    for (std::size_t k = 0; k < it.indices.size() && it.residuals[k] > 1e-8; ++k) {
      y = project(body, y, it.indices[k], r).point;
      const DistanceBound cur = distance(body, base, y);
      if (cur.upper > prev.lower + 2.0 * std::max(prev.gap(), cur.gap()) + 1e-12) ++rep.monotonicity_violations;
      prev = cur;
    }
  }
  rep.ok = rep.runs > 0 && rep.converged == rep.runs && rep.max_observed_ratio < 1.0 &&
           rep.monotonicity_violations == 0;
  return rep;
}

StarConvexityReport verify_star_convexity(const VertexSet& vs, const TranslateSet& translates) {
  StarConvexityReport rep;
  rep.min_turn = std::numeric_limits<double>::infinity();
  std::int64_t control = -1;
  for (std::size_t v = 0; v < vs.vertices.size(); ++v) {
    const OrbitVertex& w = vs.vertices[v];
    if (!w.complete_link || w.degenerate) {
      ++rep.skipped;
      continue;
    }
    const StarNeighborhood st = star_neighborhood(vs, v, translates, LinkPolicy::Require);
    ++rep.checked;
    if (st.convex) ++rep.convex;
    rep.min_turn = std::min(rep.min_turn, st.min_turn);
    if (control < 0) control = static_cast<std::int64_t>(v);
  }
  if (control >= 0) {
    TranslateSet corrupted = translates;
    const OrbitVertex& w = vs.vertices[static_cast<std::size_t>(control)];
    corrupted.slot[w.incident.front()] = -1;
    rep.control_convex = star_neighborhood(vs, static_cast<std::size_t>(control), corrupted, LinkPolicy::Allow).convex;
  }
  rep.ok = rep.checked > 0 && rep.convex == rep.checked && !rep.control_convex;
  return rep;
}

}  // namespace hcox
