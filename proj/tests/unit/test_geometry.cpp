#include "fixtures.hpp"

#include "hcox/polygon.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hcox;
using fixtures::k444;
using fixtures::kSqrt2;
using fixtures::Scene;

namespace {

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST(Chart, DualBasisOracle) {
  for (double t : {0.3, kSqrt2, 5.0}) {
    const GramLikeMatrix a = family_matrix(k444(), t);
    const Chart c = chart_for(a);
    Mat f(3, 3);
    for (int i = 0; i < 3; ++i) f.row(i) = c.signs()(i) * a.row(i).transpose();
    const Vec ell = f.fullPivLu().solve(Vec::Ones(3));
    EXPECT_LE((ell - c.functional()).norm(), 1e-12 * ell.norm());
    for (int i = 0; i < 3; ++i) {
      EXPECT_GT(c.functional()(i), 0.0);
      EXPECT_NEAR(c.eval(c.signs()(i) * a.row(i)), 1.0, 1e-12);
    }
    EXPECT_GT(c.eval(c.base_point()), 0.0);
  }
  const Chart h = chart_for(family_matrix(k444(), kSqrt2));
  EXPECT_NEAR(h.functional()(0), h.functional()(1), 1e-14);
  EXPECT_NEAR(h.functional()(1), h.functional()(2), 1e-14);
}

TEST(Chart, Coordinates) {
  const Mat b = sum_zero_basis(3);
  EXPECT_LE((b.transpose() * b - Mat::Identity(3, 3)).norm(), 1e-14);
  EXPECT_LE((Vec::Ones(4).transpose() * b).norm(), 1e-14);

  const Chart c = chart_for(family_matrix(k444(), 3.0));
  for (int k = 0; k < 3; ++k) {
    Vec e = Vec::Zero(3);
    e(k) = 1.0;
    EXPECT_LE((c.to_chart(e) - c.vertex(k)).norm(), 1e-14);
    EXPECT_LE((c.to_chart(-2.0 * e) - c.vertex(k)).norm(), 1e-14);
  }
  EXPECT_LE(c.to_chart(c.base_point()).norm(), 1e-14);
  const Vec lam = v3(0.2, 0.5, 0.3);
  const Vec h = c.from_chart(c.from_barycentric(lam));
  EXPECT_NEAR(c.eval(h), 1.0, 1e-14);
  EXPECT_LE((c.barycentric(h) - lam).norm(), 1e-14);
  EXPECT_LE((c.barycentric(7.0 * h) - lam).norm(), 1e-14);
  EXPECT_TRUE(c.degenerate(v3(1.0, -1.0, 0.0).cwiseQuotient(c.functional())));
}

TEST(Approx, DepthZeroIsPAndS) {
  const auto s = Scene::make(3.0, 0, 0);
  const ConvexApprox& body = s->body;
  ASSERT_EQ(body.inner_points().size(), 3u);
  std::vector<Vec> pv;
  for (int k = 0; k < 3; ++k) pv.push_back(s->chart.vertex(k));
  for (const Vec& u : body.inner_points()) EXPECT_LE(distance_to_simplex(u, pv), 1e-14);
  ASSERT_EQ(body.outer_vertices().size(), 3u);
  double far = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec fi = s->chart.to_chart(s->a.row(i));
    bool hit = false;
    for (const Vec& o : body.outer_vertices()) hit = hit || (o - fi).norm() < 1e-12;
    EXPECT_TRUE(hit) << i;
    far = std::max(far, distance_to_simplex(fi, pv));
  }
  EXPECT_NEAR(hausdorff_to_P(body).outer, far, 1e-12);
  EXPECT_NEAR(hausdorff_to_P(body).inner, 0.0, 1e-14);
}

TEST(Approx, HyperbolicPointIsTight) {
  const auto s = Scene::make(kSqrt2, 12, 12);
  EXPECT_LT(hausdorff_inner_outer(s->body), 0.01);
  EXPECT_EQ(s->body.degenerate_count(), 0u);
}

TEST(Approx, MonotoneInDepth) {
  for (double t : {kSqrt2, 4.0, 0.5}) {
    const auto s = Scene::make(t, 12, 12);
    const ConvexApprox b8 = build_approx(*s->tb, s->vs, s->chart, 8);
    for (const Vec& u : b8.inner_points()) EXPECT_TRUE(s->body.contains(Side::Inner, u, 1e-12));
    for (const Vec& u : s->body.outer_vertices()) EXPECT_TRUE(b8.contains(Side::Outer, u, 1e-12));
    double last_in = 0.0, last_out = 1e9, last_gap = 1e9;
    for (int d : {2, 4, 8, 12}) {
      const ConvexApprox b = build_approx(*s->tb, s->vs, s->chart, d);
      const HausdorffPair h = hausdorff_to_P(b);
      EXPECT_LE(h.outer, last_out + 1e-12);
      EXPECT_GE(h.inner, last_in - 1e-12);
      EXPECT_LE(hausdorff_inner_outer(b), last_gap + 1e-12);
      last_in = h.inner;
      last_out = h.outer;
      last_gap = hausdorff_inner_outer(b);
    }
  }
}

TEST(Approx, InnerInsideOuter) {
  const double th = kSqrt2;
  for (double t : {th / 32, th / 4, th, 4 * th, 32 * th}) {
    const auto s = Scene::make(t, 10, 10);
    for (int d : {0, 3, 6, 10})
      EXPECT_GE(build_approx(*s->tb, s->vs, s->chart, d).containment_slack(), -1e-10) << t << " " << d;
  }
}

TEST(Approx, DegeneratesToP) {
  double prev = 1e9;
  for (double t : {kSqrt2, 4.0, 16.0}) {
    const double h = hausdorff_to_P(Scene::make(t, 10, 10)->body).outer;
    EXPECT_LT(h, prev) << t;
    prev = h;
  }
  const GramLikeMatrix a = family_matrix(k444(), 64.0);
  const Chart c = chart_for(a);
  EXPECT_LT((c.to_chart(v3(1.0, -32.0, -1.0 / 64)) - c.vertex(1)).norm(), 0.05);
}

TEST(RayExit, Examples) {
  const Chart c = chart_for(family_matrix(k444(), 2.0));
  const ConvexApprox p = simplex_body(c);
  const Vec x = c.barycenter();
  for (int k = 0; k < 3; ++k) {
    const Vec v = c.vertex(k) - x;
    EXPECT_NEAR(ray_exit(p, Side::Inner, x, v), 1.0, 1e-12);
    EXPECT_NEAR(ray_exit(p, Side::Outer, x, v), 1.0, 1e-12);
  }
  const auto s = Scene::make(2.0, 0, 0);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 50; ++trial) {
    Vec v(2);
    v << nd(rng), nd(rng);
    double closed = std::numeric_limits<double>::infinity();
    for (const HalfSpace& h : s->body.outer()) {
      const double rate = h.normal.dot(v);
      if (rate > 0) closed = std::min(closed, h.slack(x) / rate);
    }
    EXPECT_NEAR(ray_exit(s->body, Side::Outer, x, v), closed, 1e-12 * closed);
    EXPECT_LE(ray_exit(s->body, Side::Inner, x, v), ray_exit(s->body, Side::Outer, x, v) + 1e-12);
  }
  Vec outside(2);
  outside << 5.0, 5.0;
  EXPECT_THROW(ray_exit(p, Side::Inner, outside, outside), GeometryError);
}

TEST(Star, VertexOfP) {
  const auto s = Scene::make(kSqrt2, 8, 8);
  const TranslateSet ts = simplex_translates(*s->tb, s->chart);
  const std::size_t p2 = static_cast<std::size_t>(s->vs.id(0, 2));
  const StarNeighborhood st = star_neighborhood(s->vs, p2, ts);
  EXPECT_EQ(st.triangles, 8u);
  EXPECT_TRUE(st.complete);
  EXPECT_TRUE(st.convex);

  TranslateSet broken = ts;
  broken.slot[s->vs.vertices[p2].incident.front()] = -1;
  EXPECT_THROW(star_neighborhood(s->vs, p2, broken), GeometryError);
  const StarNeighborhood open = star_neighborhood(s->vs, p2, broken, LinkPolicy::Allow);
  EXPECT_FALSE(open.complete);
  EXPECT_FALSE(open.convex);
  EXPECT_EQ(open.triangles, 7u);
}

TEST(Star, InteriorVerticesConvex) {
  const auto s = Scene::make(kSqrt2, 10, 10);
  const TranslateSet ts = simplex_translates(*s->tb, s->chart);
  int checked = 0;
  for (std::size_t v = 0; v < s->vs.vertices.size(); ++v) {
    if (!s->vs.vertices[v].complete_link) continue;
    EXPECT_TRUE(star_neighborhood(s->vs, v, ts).convex) << v;
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

// The cycle-reversing relabeling composed with the diagonal conjugator carries the tiling at t
// onto the tiling at 2/t.
TEST(Approx, RelabelMapsVertices) {
  const double t = 4.0, s = 2.0 / t;
  const auto a = Scene::make(t, 6, 6), b = Scene::make(s, 6, 6);
  const int perm[] = {0, 2, 1};
  const auto conj = diag_equivalent(permuted(a->a, perm), b->a);
  ASSERT_TRUE(conj);
  Mat pi = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) pi(perm[i], i) = 1.0;
  const Mat m = conj->lambdas().cwiseInverse().asDiagonal() * pi;
  for (const OrbitVertex& v : a->vs.vertices) {
    if (v.degenerate) continue;
    const Vec mapped = b->chart.to_chart(m * v.homogeneous);
    double best = 1e9;
    for (const OrbitVertex& w : b->vs.vertices)
      if (!w.degenerate) best = std::min(best, (w.point - mapped).norm());
    EXPECT_LT(best, 1e-8);
  }
}

TEST(Polygon, Basics) {
  using poly::Point;
  const poly::Polygon sq = poly::convex_hull({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1), Point(0.5, 0.5),
                                              Point(0.5, 0)});
  ASSERT_EQ(sq.size(), 4u);
  EXPECT_DOUBLE_EQ(poly::signed_area(sq), 1.0);
  const poly::Polygon half = poly::clip(sq, Point(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(poly::signed_area(half), 0.5);
  const poly::Polygon shifted = {Point(0.5, 0.5), Point(1.5, 0.5), Point(1.5, 1.5), Point(0.5, 1.5)};
  EXPECT_NEAR(poly::signed_area(poly::intersect(sq, shifted)), 0.25, 1e-15);
  EXPECT_TRUE(poly::contains(sq, Point(0.2, 0.3)));
  EXPECT_FALSE(poly::contains(sq, Point(1.2, 0.3)));
  EXPECT_NEAR(poly::distance(Point(2, 0.5), sq), 1.0, 1e-15);
  EXPECT_EQ(poly::distance(Point(0.5, 0.5), sq), 0.0);
  EXPECT_NEAR(poly::hausdorff(sq, shifted), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(poly::segment_distance(Point(0, 1), Point(-1, 0), Point(1, 0)), 1.0, 1e-15);
}
