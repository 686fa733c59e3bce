#pragma once

#include "hcox/coxeter.hpp"
#include "hcox/entropy.hpp"
#include "hcox/geometry.hpp"
#include "hcox/hilbert.hpp"
#include "hcox/orbit.hpp"
#include "hcox/rep.hpp"

#include <cstdint>
#include <vector>

namespace hcox {

// Homogeneous point of P from barycentric coordinates.
Vec lift_barycentric(const Chart& chart, const Vec& lambda);

// Ambient distance between two skeleton vertices, each evaluated in the frame of its tile.
DistanceBound vertex_distance(const TransportedBall& tb, const ConvexApprox& body, const VertexSet& vs, std::size_t u,
                              std::size_t v);

struct MetricPair {
  std::size_t u = 0;
  std::size_t v = 0;
  DistanceBound ambient;
  DistanceBound graph;  // shortest paths with lower and with upper edge lengths
  double ratio = 0.0;   // graph.upper / ambient.lower
};

struct MetricComparisonReport {
  std::vector<MetricPair> pairs;
  double c_prime = 0.0;          // max ratio
  double worst_deficit = 0.0;    // max of ambient.lower - graph.lower - allowance
  std::size_t violations = 0;
  bool ok = true;
};

// Graph distance dominates ambient distance: graph.lower >= ambient.lower - 2 gap - hops * edge deficit,
// where the deficit accounts for the epsilon-shortened edges.
MetricComparisonReport verify_metric_comparison(const TransportedBall& tb, const ConvexApprox& body,
                                                const MetricGraph& g, int samples, std::uint64_t seed);

struct VertexRatioSample {
  int vertex = 0;  // E = p_vertex of P
  double a = 0.0;  // barycentric offset of x from E along A
  double b = 0.0;  // same for y along B
  DistanceBound dxe;
  DistanceBound dye;
  DistanceBound dxy;
  double ratio = 0.0;  // (dxe.upper + dye.upper) / dxy.lower
  double bound = 0.0;  // 2 m_E
};

struct VertexRatioReport {
  std::size_t samples = 0;
  double max_ratio = 0.0;
  double max_excess = 0.0;  // max of ratio - bound
  double epsilon = 0.0;
  double slack = 0.0;
  VertexRatioSample worst;
  bool ok = true;
};

// x on A, y on B, two edges of P meeting at the vertex E; checks the ratio against 2 m_E + slack.
VertexRatioReport verify_prop_main(const ConvexApprox& body, const CoxeterGraph& j, int samples, std::uint64_t seed,
                                   double epsilon = 1e-6, double slack = 0.1);

struct ChainSegment {
  Vec from;
  Vec to;
  DistanceBound length;
};

struct ChainReport {
  int vertex = 0;
  int p = 0;
  std::vector<ChainSegment> segments;
  Vec terminal;
  double joint_error = 0.0;      // worst distance between shared endpoints
  double collinearity = 0.0;     // |sin| of the angle between E->x and E->terminal
  bool opposite = false;         // E separates x from the terminal point
  double gap = 0.0;              // worst bound gap over the chain
  DistanceBound dxy;
  DistanceBound total;
  DistanceBound dx_terminal;
  DistanceBound dx_proxy;
  bool chaining_ok = false;
  bool lengths_ok = false;
  bool total_ok = false;
  bool terminal_ok = false;
  bool inequality_ok = false;
  bool ok = false;
};

// Images of [x, y] under s_B, s_B s_A, s_B s_A s_B, ... (p - 1 letters), with x on A and y on B,
// given as barycentric offsets from E.
ChainReport chain_construction(const ConvexApprox& body, const ReflectionSet& r_t, const CoxeterGraph& j, int vertex,
                               double a, double b, double epsilon = 1e-6);

struct ContractionReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max of upper(Pr x, Pr y) - lower(x, y) - 2 gap
  double max_gap = 0.0;
  bool ok = true;
};

// Random chart points in the tiles of elements of length <= sample_depth.
std::vector<Vec> sample_points(const TransportedBall& tb, const Chart& chart, int count, int sample_depth,
                               std::uint64_t seed);

// upper(Pr x, Pr y) <= lower(x, y) + 2 gap on the body symmetrized for s_i.
ContractionReport verify_projection_contraction(const TransportedBall& tb, const ConvexApprox& body, int i,
                                                int samples, std::uint64_t seed, int sample_depth = 2);

struct IteratedProjectionReport {
  std::size_t runs = 0;
  std::size_t converged = 0;
  double max_observed_ratio = 0.0;
  std::size_t monotonicity_violations = 0;
  bool ok = true;
};

// Projection onto the common intersection of the L_i, checking geometric decay and that the distance
// to a point of the intersection never grows.
IteratedProjectionReport verify_iterated_projection(const TransportedBall& tb, const ConvexApprox& body,
                                                    const std::vector<int>& indices, int samples, std::uint64_t seed,
                                                    double tol = 1e-10);

struct StarConvexityReport {
  std::size_t checked = 0;
  std::size_t convex = 0;
  std::size_t skipped = 0;  // incomplete link
  double min_turn = 0.0;
  bool control_convex = true;  // verdict on the corrupted star, expected false
  bool ok = false;
};

StarConvexityReport verify_star_convexity(const VertexSet& vs, const TranslateSet& translates);

}  // namespace hcox
