#include "hcox/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hcox {

double cross_ratio_distance(const Vec& x0, const Vec& x, const Vec& y, const Vec& y0) {
  const Vec d = y0 - x0;
  const double len = d.norm();
  if (!(len > 0.0)) throw GeometryError("cross_ratio_distance: coincident boundary points");
  auto param = [&](const Vec& p) {
    const double s = (p - x0).dot(d) / (len * len);
    const Vec off = p - x0 - s * d;
    if (off.norm() > 1e-10 * std::max(1.0, len)) throw GeometryError("cross_ratio_distance: points are not collinear");
    return s;
  };
  const double sx = param(x), sy = param(y);
  if (!(sx > 0.0 && sx < 1.0 && sy > 0.0 && sy < 1.0))
    throw GeometryError("cross_ratio_distance: x and y must lie strictly between the boundary points");
  if (sx == sy) return 0.0;
  const double a = std::min(sx, sy), b = std::max(sx, sy);
  // |x0 - y||y0 - x| / (|x0 - x||y0 - y|) with x before y
  return 0.5 * std::log((b * (1.0 - a)) / (a * (1.0 - b)));
}

namespace {

double half_log_ratio(double tau) { return std::log1p(1.0 / tau); }

DistanceBound ordered(double lower, double upper) {
  if (lower > upper && lower - upper <= 1e-12 * std::max(1.0, upper)) lower = upper;
  return {lower, upper};
}

}  // namespace

DistanceBound distance(const ConvexApprox& body, const Vec& x, const Vec& y) {
  const Vec dir = y - x;
  if (dir.norm() == 0.0) {
    ray_exit(body, Side::Inner, x, Vec::Unit(body.n(), 0));
    return {0.0, 0.0};
  }
  auto value = [&](Side side) {
    const double ty = ray_exit(body, side, y, dir);
    const double tx = ray_exit(body, side, x, -dir);
    return 0.5 * (half_log_ratio(tx) + half_log_ratio(ty));
  };
  return ordered(value(Side::Outer), value(Side::Inner));
}

FramedPoint frame_point(const Vec& point) {
  return {point, Mat::Identity(point.size(), point.size()), point};
}

FramedPoint frame_point(const Vec& point, const Mat& frame) { return {point, frame, frame * point}; }

FramedPoint frame_point(const Vec& point, const Mat& frame, const Vec& framed) { return {point, frame, framed}; }

namespace {

// Half of the cross-ratio seen from endpoint p, in the frame of p.
struct EndTerm {
  double lower = 0.0;
  double upper = 0.0;
};

EndTerm end_term(const ConvexApprox& body, const FramedPoint& p, const Vec& q) {
  const Chart& chart = body.chart();
  const Vec fq = p.frame * q;
  const Vec pc = chart.to_chart(p.framed);
  const Vec qc = chart.to_chart(fq);
  const Vec dir = pc - qc;
  if (dir.norm() == 0.0) return {};
  const double rq = chart.eval(fq) / chart.eval(q);
  const double rp = chart.eval(p.framed) / chart.eval(p.point);
  if (!(rq > 0.0) || !(rp > 0.0)) throw GeometryError("distance_framed: frame does not preserve the chart side");
  const double correction = std::log(rq) - std::log(rp);
  EndTerm t;
  t.lower = half_log_ratio(ray_exit(body, Side::Outer, pc, dir)) + correction;
  t.upper = half_log_ratio(ray_exit(body, Side::Inner, pc, dir)) + correction;
  return t;
}

}  // namespace

DistanceBound distance_framed(const ConvexApprox& body, const FramedPoint& x, const FramedPoint& y) {
  const EndTerm ex = end_term(body, x, y.point);
  const EndTerm ey = end_term(body, y, x.point);
  return ordered(std::max(0.0, 0.5 * (ex.lower + ey.lower)), std::max(0.0, 0.5 * (ex.upper + ey.upper)));
}

double simplex_distance(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw InputError("simplex_distance: dimension mismatch");
  if ((x.array() <= 0.0).any() || (y.array() <= 0.0).any())
    throw GeometryError("simplex_distance: coordinates must be positive");
  const Eigen::ArrayXd r = (x.array() / y.array()).log();
  return 0.5 * (r.maxCoeff() - r.minCoeff());
}

Vec chord_projection(const Vec& h, const Vec& f, int i) { return h - h(i) * f; }

Projection project(const ConvexApprox& body, const Vec& x, int i, const ReflectionSet& r_t) {
  if (!body.contains(Side::Inner, x)) throw GeometryError("project: point outside the body");
  const Chart& chart = body.chart();
  const Vec h = chart.from_chart(x);
  if (std::abs(h(i)) <= 1e-14 * h.norm()) return {x, true};
  return {chart.to_chart(chord_projection(h, r_t.fixed_point(i), i)), false};
}

IteratedProjection iterated_project(const ConvexApprox& body, const Vec& x, std::span<const int> indices,
                                    const ReflectionSet& r_t, double tol, int max_steps) {
  if (indices.empty()) throw InputError("iterated_project: empty index set");
  const Chart& chart = body.chart();
  const int dim = chart.n();
  const double c = 1.0 / (dim + 1);
  // L_k = {u : B_k u = -c}
  const int m = static_cast<int>(indices.size());
  Mat g(m, dim);
  for (int k = 0; k < m; ++k) g.row(k) = chart.basis().row(indices[k]);
  const Vec rhs = Vec::Constant(m, -c);
  const Mat gram = g * g.transpose();
  Eigen::FullPivLU<Mat> lu(gram);
  if (lu.rank() < m) throw GeometryError("iterated_project: hyperplanes are not independent");
  auto to_w = [&](const Vec& u) -> Vec { return u - g.transpose() * lu.solve(g * u - rhs); };

  IteratedProjection out;
  Vec y = x;
  for (int step = 0;; ++step) {
    const double res = (y - to_w(y)).norm();
    out.residuals.push_back(res);
    if (res < tol) {
      out.converged = true;
      break;
    }
    if (step >= max_steps) break;
    int best = -1;
    double best_sin = -1.0;
    for (int k = 0; k < m; ++k) {
      const double dist = std::abs(g.row(k).dot(y) + c) / g.row(k).norm();
      if (dist / res > best_sin) {
        best_sin = dist / res;
        best = indices[k];
      }
    }
    const Projection p = project(body, y, best, r_t);
    out.indices.push_back(best);
    ++out.steps;
    y = p.point;
  }
  out.point = y;
  if (out.steps > 0 && out.residuals.front() > 0.0) {
    const double last = std::max(out.residuals.back(), std::numeric_limits<double>::min());
    out.observed_ratio = std::pow(last / out.residuals.front(), 1.0 / out.steps);
    for (std::size_t k = 1; k < out.residuals.size(); ++k)
      out.max_step_ratio = std::max(out.max_step_ratio, out.residuals[k] / out.residuals[k - 1]);
  }
  return out;
}

Vec barycentric_point(const Chart& chart, const Vec& lambda) { return chart.from_barycentric(lambda); }

EdgeLengths edge_lengths(const ConvexApprox& body, double epsilon) {
  const Chart& chart = body.chart();
  const int s = chart.n() + 1;
  EdgeLengths out;
  out.epsilon = epsilon;
  out.l_t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      Vec a = Vec::Zero(s), b = Vec::Zero(s);
      a(i) = 1.0 - epsilon;
      a(j) = epsilon;
      b(i) = epsilon;
      b(j) = 1.0 - epsilon;
      EdgeLength e{i, j, distance(body, chart.from_barycentric(a), chart.from_barycentric(b))};
      out.l_t = std::min(out.l_t, e.length.lower);
      out.edges.push_back(e);
    }
  return out;
}

}  // namespace hcox
