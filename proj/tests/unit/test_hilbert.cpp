#include "fixtures.hpp"

#include "hcox/hilbert.hpp"
#include "hcox/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hcox;
using fixtures::k444;
using fixtures::kSqrt2;
using fixtures::Scene;

namespace {

Vec v1(double a) { return Vec::Constant(1, a); }

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

// Random point of P in barycentric coordinates, away from the boundary.
Vec random_bary(std::mt19937_64& rng, double floor = 0.02) {
  std::exponential_distribution<double> e(1.0);
  Vec v = v3(floor + e(rng), floor + e(rng), floor + e(rng));
  return v / v.sum();
}

// Hilbert distance in P along the chord, with the exits found by intersecting the line
// through x and y with the three sides lambda_k = 0.
double chord_oracle(const Vec& x, const Vec& y) {
  const Vec d = y - x;
  double t_plus = std::numeric_limits<double>::infinity(), t_minus = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (d(k) < 0) t_plus = std::min(t_plus, -x(k) / d(k));
    if (d(k) > 0) t_minus = std::min(t_minus, x(k) / d(k));
  }
  // x at 0, y at 1, y0 at t_plus, x0 at -t_minus
  return 0.5 * std::log((1.0 + t_minus) * t_plus / (t_minus * (t_plus - 1.0)));
}

}  // namespace

TEST(CrossRatio, Examples) {
  EXPECT_NEAR(cross_ratio_distance(v1(-1), v1(0), v1(0.5), v1(1)), 0.5 * std::log(3.0), 1e-15);
  EXPECT_NEAR(cross_ratio_distance(v1(-1), v1(0), v1(0.5), v1(1)), 0.5493061, 5e-8);
  EXPECT_EQ(cross_ratio_distance(v1(-1), v1(0.3), v1(0.3), v1(1)), 0.0);
  const Vec x0 = v3(0, 0, 0), x = v3(1, 2, 3), y = v3(2, 4, 6), y0 = v3(5, 10, 15);
  EXPECT_NEAR(cross_ratio_distance(x0, x, y, y0), cross_ratio_distance(y0, y, x, x0), 1e-15);
  EXPECT_THROW(cross_ratio_distance(v3(0, 0, 0), v3(1, 1, 0), v3(2, 2, 0), v3(3, 3, 1)), GeometryError);
  EXPECT_THROW(cross_ratio_distance(v1(-1), v1(2), v1(0.5), v1(1)), GeometryError);
  EXPECT_THROW(cross_ratio_distance(v1(1), v1(1), v1(1), v1(1)), GeometryError);
}

TEST(SimplexDistance, Examples) {
  const Vec x = v3(1.0 / 3, 1.0 / 3, 1.0 / 3), y = v3(0.5, 0.25, 0.25);
  EXPECT_NEAR(simplex_distance(x, y), 0.5 * std::log(2.0), 1e-15);
  EXPECT_NEAR(chord_oracle(x, y), 0.5 * std::log(2.0), 1e-14);
  EXPECT_EQ(simplex_distance(y, y), 0.0);
  EXPECT_NEAR(simplex_distance(x, 3.7 * y), simplex_distance(x, y), 1e-15);
  EXPECT_THROW(simplex_distance(x, v3(1, 0, 0)), GeometryError);
}

TEST(Distance, OnPMatchesOracles) {
  const Chart c = chart_for(family_matrix(k444(), 3.0));
  const ConvexApprox p = simplex_body(c);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 200; ++k) {
    const Vec x = random_bary(rng), y = random_bary(rng);
    const DistanceBound d = distance(p, barycentric_point(c, x), barycentric_point(c, y));
    EXPECT_NEAR(d.lower, simplex_distance(x, y), 1e-11);
    EXPECT_NEAR(d.upper, simplex_distance(x, y), 1e-11);
    EXPECT_NEAR(chord_oracle(x, y), simplex_distance(x, y), 1e-11);
  }
  const DistanceBound z = distance(p, c.barycenter(), c.barycenter());
  EXPECT_EQ(z.lower, 0.0);
  EXPECT_EQ(z.upper, 0.0);
}

TEST(Distance, NestedDepths) {
  const auto s = Scene::make(4.0, 12, 12);
  const ConvexApprox b6 = build_approx(*s->tb, s->vs, s->chart, 6);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    const Vec x = barycentric_point(s->chart, random_bary(rng));
    const Vec y = barycentric_point(s->chart, random_bary(rng));
    const DistanceBound coarse = distance(b6, x, y), fine = distance(s->body, x, y);
    EXPECT_LE(coarse.lower, fine.lower + 1e-12);
    EXPECT_LE(fine.lower, fine.upper + 1e-12);
    EXPECT_LE(fine.upper, coarse.upper + 1e-12);
  }
}

TEST(Distance, TriangleInequality) {
  const auto s = Scene::make(kSqrt2, 12, 12);
  const std::vector<Vec> pts = sample_points(*s->tb, s->chart, 300, 3, 17);
  for (std::size_t k = 0; k + 2 < pts.size(); k += 3) {
    const DistanceBound xy = distance(s->body, pts[k], pts[k + 1]);
    const DistanceBound yz = distance(s->body, pts[k + 1], pts[k + 2]);
    const DistanceBound xz = distance(s->body, pts[k], pts[k + 2]);
    const double gap = std::max({xy.gap(), yz.gap(), xz.gap()});
    EXPECT_LE(xz.lower, xy.upper + yz.upper + 1e-12);
    EXPECT_LE(xz.upper, xy.upper + yz.upper + 2 * gap + 1e-12);
  }
}

TEST(Distance, GroupInvariance) {
  const auto s = Scene::make(4.0, 12, 12);
  std::mt19937_64 rng(10);
  const std::size_t end = s->tb->ball().sphere_begin(3);
  for (int k = 0; k < 60; ++k) {
    const Vec x = barycentric_point(s->chart, random_bary(rng, 0.1));
    const Vec y = barycentric_point(s->chart, random_bary(rng, 0.1));
    const std::size_t e = std::uniform_int_distribution<std::size_t>(0, end - 1)(rng);
    const Mat g = s->tb->forward(e);
    const DistanceBound d0 = distance(s->body, x, y);
    const DistanceBound d1 =
        distance(s->body, s->chart.to_chart(g * s->chart.from_chart(x)), s->chart.to_chart(g * s->chart.from_chart(y)));
    const double gap = std::max(d0.gap(), d1.gap());
    EXPECT_LE(d1.lower, d0.upper + gap + 1e-12);
    EXPECT_LE(d0.lower, d1.upper + gap + 1e-12);
  }
}

TEST(Distance, FramedAgreesWithDirect) {
  const auto s = Scene::make(2.0, 12, 12);
  const Vec base = s->chart.base_point();
  const Vec x0 = s->chart.to_chart(base);
  for (std::size_t e = 1; e < s->tb->ball().sphere_begin(5); e += 3) {
    const Vec h = s->tb->forward(e) * base;
    const DistanceBound direct = distance(s->body, x0, s->chart.to_chart(h));
    const DistanceBound framed =
        distance_framed(s->body, frame_point(base), frame_point(h, s->tb->inverse(e), base));
    const double gap = std::max(direct.gap(), framed.gap());
    EXPECT_LE(std::abs(direct.lower - framed.lower), gap + 1e-9) << e;
    EXPECT_LE(framed.lower, framed.upper + 1e-12);
  }
  const Vec y = barycentric_point(s->chart, v3(0.2, 0.3, 0.5));
  const DistanceBound plain = distance(s->body, x0, y);
  const DistanceBound framed = distance_framed(s->body, frame_point(base), frame_point(s->chart.from_chart(y)));
  EXPECT_NEAR(plain.lower, framed.lower, 1e-12);
  EXPECT_NEAR(plain.upper, framed.upper, 1e-12);
}

TEST(Projection, ChordMidpoint) {
  const auto s = Scene::make(3.0, 10, 10);
  for (int i = 0; i < 3; ++i) {
    const ConvexApprox sym = symmetrize(s->body, i, s->r);
    const std::vector<Vec> pts = sample_points(*s->tb, s->chart, 40, 2, 30 + i);
    for (const Vec& x : pts) {
      const Projection pr = project(sym, x, i, s->r);
      EXPECT_NEAR(s->chart.from_chart(pr.point)(i), 0.0, 1e-10);
      EXPECT_FALSE(pr.on_hyperplane);
      const Projection again = project(sym, pr.point, i, s->r);
      EXPECT_TRUE(again.on_hyperplane);
      EXPECT_LE((again.point - pr.point).norm(), 1e-12);
    }
  }
}

TEST(Projection, NearestOnHyperplane) {
  const auto s = Scene::make(kSqrt2, 10, 10);
  const int i = 0;
  const ConvexApprox sym = symmetrize(s->body, i, s->r);
  const std::vector<Vec> pts = sample_points(*s->tb, s->chart, 20, 1, 44);
  // L_0 in the chart: the segment between p_1 and p_2 extended through the body
  const Vec a = s->chart.vertex(1), b = s->chart.vertex(2);
  for (const Vec& x : pts) {
    const Projection pr = project(sym, x, i, s->r);
    const DistanceBound to_pr = distance(sym, x, pr.point);
    for (double u : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const Vec z = a + u * (b - a);
      const DistanceBound to_z = distance(sym, x, z);
      EXPECT_LE(to_pr.lower, to_z.upper + 1e-12);
    }
  }
}

TEST(Projection, Iterated) {
  const auto s = Scene::make(kSqrt2, 10, 10);
  const ConvexApprox sym = symmetrize(s->body, 1, s->r);
  const std::vector<Vec> pts = sample_points(*s->tb, s->chart, 10, 2, 50);
  const int one[] = {1};
  for (const Vec& x : pts) {
    const IteratedProjection it = iterated_project(sym, x, one, s->r, 1e-12);
    EXPECT_TRUE(it.converged);
    EXPECT_LE(it.steps, 1);
    EXPECT_LE((it.point - project(sym, x, 1, s->r).point).norm(), 1e-12);
    const IteratedProjection fixed = iterated_project(sym, it.point, one, s->r, 1e-9);
    EXPECT_EQ(fixed.steps, 0);
  }
  const IteratedProjectionReport rep = verify_iterated_projection(*s->tb, s->body, {0, 1}, 10, 7);
  EXPECT_TRUE(rep.ok);
  EXPECT_LT(rep.max_observed_ratio, 1.0);
  EXPECT_EQ(rep.monotonicity_violations, 0u);
}

TEST(Projection, Contraction) {
  const auto s = Scene::make(4.0, 10, 10);
  for (int i = 0; i < 3; ++i) {
    const ContractionReport c = verify_projection_contraction(*s->tb, s->body, i, 60, 70 + i);
    EXPECT_TRUE(c.ok) << i;
    EXPECT_EQ(c.pairs, 60u);
  }
}

TEST(EdgeLengths, SymmetryAndGrowth) {
  const EdgeLengths h = edge_lengths(Scene::make(kSqrt2, 12, 12)->body);
  ASSERT_EQ(h.edges.size(), 3u);
  EXPECT_EQ(h.epsilon, 1e-6);
  for (const EdgeLength& e : h.edges) {
    EXPECT_NEAR(e.length.lower, h.edges[0].length.lower, 1e-6);
    EXPECT_NEAR(e.length.upper, h.edges[0].length.upper, 1e-6);
    EXPECT_LE(e.length.lower, e.length.upper);
  }
  double prev = h.l_t;
  for (double t : {4.0, 16.0}) {
    const double l = edge_lengths(Scene::make(t, 12, 12)->body).l_t;
    EXPECT_GT(l, prev) << t;
    prev = l;
  }
}
