#include "pipeline.hpp"

namespace hcox::cli {

void require_lanner_circuit(const CoxeterGraph& graph) {
  if (classify(graph).tag != GraphTag::Lanner) throw InputError("graph " + graph.to_spec() + " is not a Lanner graph");
  lanner_circuit(graph);
}

Group Group::make(const CoxeterGraph& graph, int depth, std::size_t max_elements, unsigned threads) {
  require_lanner_circuit(graph);
  const double th = hyperbolic_parameter(graph);
  EnumerateOptions opt;
  opt.max_elements = max_elements;
  opt.threads = threads;
  return Group{graph, th, enumerate(reflections_from(family_matrix(graph, th), th), depth, opt)};
}

std::unique_ptr<Stage> Stage::make(const Group& g, double t, int body_depth) {
  GramLikeMatrix a = family_matrix(g.graph, t);
  ReflectionSet r = reflections_from(a, t);
  Chart chart = chart_for(a);
  auto tb = std::make_unique<TransportedBall>(g.ball, r);
  VertexSet vs = vertex_orbits(*tb, chart);
  ConvexApprox body = build_approx(*tb, vs, chart, body_depth);
  return std::unique_ptr<Stage>(
      new Stage{t, std::move(a), std::move(r), std::move(chart), std::move(tb), std::move(vs), std::move(body)});
}

}  // namespace hcox::cli
