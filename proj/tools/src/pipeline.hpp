#pragma once

#include "hcox/coxeter.hpp"
#include "hcox/entropy.hpp"
#include "hcox/geometry.hpp"
#include "hcox/moduli.hpp"
#include "hcox/orbit.hpp"
#include "hcox/rep.hpp"

#include <memory>
#include <string>

namespace hcox::cli {

// Words enumerated once at the hyperbolic parameter.
struct Group {
  CoxeterGraph graph;
  double th = 0.0;
  OrbitBall ball;

  static Group make(const CoxeterGraph& graph, int depth, std::size_t max_elements = 5'000'000, unsigned threads = 0);
};

// Everything at one parameter t.
struct Stage {
  double t = 0.0;
  GramLikeMatrix a;
  ReflectionSet r;
  Chart chart;
  std::unique_ptr<TransportedBall> tb;
  VertexSet vs;
  ConvexApprox body;

  static std::unique_ptr<Stage> make(const Group& g, double t, int body_depth);
};

// Throws InputError unless the graph is a Lanner graph with a circuit.
void require_lanner_circuit(const CoxeterGraph& graph);

}  // namespace hcox::cli
