#pragma once

#include "hcox/geometry.hpp"
#include "hcox/hilbert.hpp"
#include "hcox/orbit.hpp"
#include "hcox/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hcox {

struct GrowthWindow {
  double r_min = 0.0;
  double r_max = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int points = 0;
};

// Least squares fit of log(counts) against radii.
SlopeFit fit_log_slope(const std::vector<double>& radii, const std::vector<double>& counts);

struct EntropyOptions {
  std::optional<GrowthWindow> window;  // default [0.5 R_c, R_c]
  int grid_points = 64;
  double truncation_fraction = 0.10;
  unsigned threads = 0;
};

struct EntropyEstimate {
  std::vector<double> radii;
  std::vector<std::size_t> counts_lower;  // counted with lower distance bounds (larger balls)
  std::vector<std::size_t> counts_upper;  // counted with upper distance bounds
  GrowthWindow window;
  SlopeFit fit_lower;
  SlopeFit fit_upper;
  double delta_hat = 0.0;
  double delta_low = 0.0;   // interval endpoints, contain both slopes and their standard errors
  double delta_high = 0.0;
  double gap_max = 0.0;
  double completeness_radius = 0.0;  // every element with distance below this lies in the ball
  double truncation_radius = 0.0;    // largest radius with counts under the truncation fraction
  std::size_t count_at_rmax = 0;
  std::size_t ball_size = 0;
  std::string note;
};

// Bounds on d(base, g base) for every ball element, in ball order.
std::vector<DistanceBound> orbit_distances(const TransportedBall& tb, const ConvexApprox& body, const Vec& base,
                                           unsigned threads = 0);

// Slope of log #{g : d(base, g base) <= R} over the window. base is homogeneous.
EntropyEstimate orbit_growth(const TransportedBall& tb, const ConvexApprox& body, const Vec& base,
                             const EntropyOptions& options = {});

struct SkeletonEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  int i = 0;  // labels of the endpoints, i < j
  int j = 0;
  std::size_t element = 0;  // a ball element carrying the edge g[p_i, p_j]
  DistanceBound length;
};

struct MetricGraph {
  VertexSet vertices;
  std::vector<SkeletonEdge> edges;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency;  // (neighbor, edge index)
  std::size_t base = 0;  // vertex p_0
  double epsilon = 0.0;
  EdgeLengths reference;  // lengths of the edges of P
};

// 1-skeleton over the ball's vertices; edge lengths are the epsilon-offset lengths of P's
// edges transported by the group.
MetricGraph build_skeleton(const TransportedBall& tb, const ConvexApprox& body, double epsilon = 1e-6);

// Distance between the epsilon-offset endpoints of the edge, measured in place.
DistanceBound measure_edge(const TransportedBall& tb, const ConvexApprox& body, const SkeletonEdge& e, double epsilon);

enum class LengthMode { Unit, Lower, Upper };
double edge_length(const SkeletonEdge& e, LengthMode mode);

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<int> hops;
  double trusted_radius = 0.0;  // distances below this are exact for the infinite graph
};

ShortestPaths shortest_paths(const MetricGraph& g, std::size_t source, LengthMode mode, double scale = 1.0);

enum class GraphEntropyMode { Bounds, Unit };

struct GraphEntropy {
  GraphEntropyMode mode = GraphEntropyMode::Unit;
  double slope = 0.0;       // midpoint
  double slope_low = 0.0;   // from upper edge lengths
  double slope_high = 0.0;  // from lower edge lengths
  double stderr_slope = 0.0;
  GrowthWindow window;
  int grid_points = 0;
};

// Vertex growth from the base vertex over [0.5 R*, R*), R* the trusted radius.
GraphEntropy graph_entropy(const MetricGraph& g, GraphEntropyMode mode, double length_scale = 1.0,
                           int grid_points = 64);

}  // namespace hcox
