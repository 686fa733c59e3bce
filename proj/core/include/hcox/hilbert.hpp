#pragma once

#include "hcox/geometry.hpp"
#include "hcox/rep.hpp"
#include "hcox/types.hpp"

#include <span>
#include <vector>

namespace hcox {

// lower comes from the outer body, upper from the inner body.
struct DistanceBound {
  double lower = 0.0;
  double upper = 0.0;
  double gap() const { return upper - lower; }
};

// 1/2 log [x0, x, y, y0] for collinear chart points with x, y inside the segment [x0, y0].
double cross_ratio_distance(const Vec& x0, const Vec& x, const Vec& y, const Vec& y0);

// Chart points strictly inside the inner body.
DistanceBound distance(const ConvexApprox& body, const Vec& x, const Vec& y);

// Homogeneous point with a group element F used to evaluate the boundary ratio at this
// end: F must preserve the domain, and framed = F * point (pass it exactly when known).
struct FramedPoint {
  Vec point;
  Mat frame;
  Vec framed;
};

FramedPoint frame_point(const Vec& point);
FramedPoint frame_point(const Vec& point, const Mat& frame);
FramedPoint frame_point(const Vec& point, const Mat& frame, const Vec& framed);

// Same bounds as distance, with each half of the cross-ratio evaluated after moving
// that endpoint by its frame. Accurate for points far from the base.
DistanceBound distance_framed(const ConvexApprox& body, const FramedPoint& x, const FramedPoint& y);

// Hilbert distance in the open simplex between barycentric points.
double simplex_distance(const Vec& x, const Vec& y);

// h - h_i f: the point of [h, s(h)] on {x_i = 0} for s = I - 2 f e_i^T.
Vec chord_projection(const Vec& h, const Vec& f, int i);

struct Projection {
  Vec point;
  bool on_hyperplane = false;
};

Projection project(const ConvexApprox& body, const Vec& x, int i, const ReflectionSet& r_t);

struct IteratedProjection {
  Vec point;
  int steps = 0;
  bool converged = false;
  std::vector<double> residuals;  // chart distance to W before each step
  std::vector<int> indices;       // hyperplane used at each step
  double observed_ratio = 0.0;    // geometric mean of residual ratios
  double max_step_ratio = 0.0;
};

IteratedProjection iterated_project(const ConvexApprox& body, const Vec& x, std::span<const int> indices,
                                    const ReflectionSet& r_t, double tol, int max_steps = 1000);

struct EdgeLength {
  int i = 0;
  int j = 0;
  DistanceBound length;
};

struct EdgeLengths {
  std::vector<EdgeLength> edges;
  double l_t = 0.0;  // min of the lower bounds
  double epsilon = 0.0;
};

// Edges of P measured between points at barycentric offset epsilon from each endpoint.
EdgeLengths edge_lengths(const ConvexApprox& body, double epsilon = 1e-6);

// Chart point of P with the given barycentric coordinates.
Vec barycentric_point(const Chart& chart, const Vec& lambda);

}  // namespace hcox
