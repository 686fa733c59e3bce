#pragma once

#include "hcox/coxeter.hpp"
#include "hcox/entropy.hpp"
#include "hcox/geometry.hpp"
#include "hcox/moduli.hpp"
#include "hcox/orbit.hpp"
#include "hcox/rep.hpp"

#include <cmath>
#include <memory>

namespace fixtures {

inline const hcox::CoxeterGraph& k444() {
  static const hcox::CoxeterGraph g = hcox::CoxeterGraph::triangle(4, 4, 4);
  return g;
}

inline const double kSqrt2 = std::sqrt(2.0);

// Words enumerated at t_h, transported to t, with bodies built to body_depth.
struct Scene {
  hcox::GramLikeMatrix a;
  hcox::ReflectionSet r;
  hcox::Chart chart;
  std::shared_ptr<const hcox::OrbitBall> ball;
  std::unique_ptr<hcox::TransportedBall> tb;
  hcox::VertexSet vs;
  hcox::ConvexApprox body;

  static std::unique_ptr<Scene> make(double t, int depth, int body_depth, const hcox::CoxeterGraph& g = k444()) {
    const double th = hcox::hyperbolic_parameter(g);
    auto ball = std::make_shared<const hcox::OrbitBall>(hcox::enumerate(hcox::reflections_from(hcox::family_matrix(g, th), th), depth));
    const hcox::GramLikeMatrix a = hcox::family_matrix(g, t);
    const hcox::ReflectionSet r = hcox::reflections_from(a, t);
    const hcox::Chart chart = hcox::chart_for(a);
    auto tb = std::make_unique<hcox::TransportedBall>(*ball, r);
    hcox::VertexSet vs = hcox::vertex_orbits(*tb, chart);
    hcox::ConvexApprox body = hcox::build_approx(*tb, vs, chart, body_depth);
    return std::unique_ptr<Scene>(
        new Scene{a, r, chart, std::move(ball), std::move(tb), std::move(vs), std::move(body)});
  }
};

}  // namespace fixtures
