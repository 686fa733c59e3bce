#include "hcox/entropy.hpp"
#include "hcox/geometry.hpp"
#include "hcox/moduli.hpp"
#include "hcox/orbit.hpp"
#include "hcox/rep.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

const hcox::CoxeterGraph& graph() {
  static const hcox::CoxeterGraph g = hcox::CoxeterGraph::triangle(4, 4, 4);
  return g;
}

hcox::ReflectionSet reflections(double t) { return hcox::reflections_from(hcox::family_matrix(graph(), t), t); }

void BM_Enumerate(benchmark::State& state) {
  const hcox::ReflectionSet r = reflections(std::sqrt(2.0));
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    hcox::OrbitBall b = hcox::enumerate(r, depth);
    benchmark::DoNotOptimize(b.size());
  }
}
BENCHMARK(BM_Enumerate)->Arg(10)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Transport(benchmark::State& state) {
  const hcox::OrbitBall ball = hcox::enumerate(reflections(std::sqrt(2.0)), static_cast<int>(state.range(0)));
  const hcox::ReflectionSet r4 = reflections(4.0);
  for (auto _ : state) {
    hcox::TransportedBall tb(ball, r4);
    benchmark::DoNotOptimize(tb.size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ball.size()));
}
BENCHMARK(BM_Transport)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_BuildApprox(benchmark::State& state) {
  const hcox::OrbitBall ball = hcox::enumerate(reflections(std::sqrt(2.0)), 12);
  const hcox::GramLikeMatrix a = hcox::family_matrix(graph(), 4.0);
  const hcox::ReflectionSet r4 = hcox::reflections_from(a, 4.0);
  const hcox::Chart chart = hcox::chart_for(a);
  const hcox::TransportedBall tb(ball, r4);
  const hcox::VertexSet vs = hcox::vertex_orbits(tb, chart);
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    hcox::ConvexApprox body = hcox::build_approx(tb, vs, chart, depth);
    benchmark::DoNotOptimize(body.depth());
  }
}
BENCHMARK(BM_BuildApprox)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_OrbitGrowth(benchmark::State& state) {
  const hcox::OrbitBall ball = hcox::enumerate(reflections(std::sqrt(2.0)), static_cast<int>(state.range(0)));
  const hcox::GramLikeMatrix a = hcox::family_matrix(graph(), 4.0);
  const hcox::ReflectionSet r4 = hcox::reflections_from(a, 4.0);
  const hcox::Chart chart = hcox::chart_for(a);
  const hcox::TransportedBall tb(ball, r4);
  const hcox::VertexSet vs = hcox::vertex_orbits(tb, chart);
  const hcox::ConvexApprox body = hcox::build_approx(tb, vs, chart, 12);
  for (auto _ : state) {
    hcox::EntropyEstimate e = hcox::orbit_growth(tb, body, chart.base_point());
    benchmark::DoNotOptimize(e.delta_hat);
  }
}
BENCHMARK(BM_OrbitGrowth)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
