#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hcox;
using fixtures::k444;
using fixtures::kSqrt2;

TEST(Reflections, FirstColumn) {
  for (double t : {0.5, kSqrt2, 3.0}) {
    const ReflectionSet r = reflections_from(family_matrix(k444(), t), t);
    const Mat& s0 = r.matrix(0);
    EXPECT_NEAR(s0(0, 0), -1.0, 1e-15);
    EXPECT_NEAR(s0(1, 0), t, 1e-15);
    EXPECT_NEAR(s0(2, 0), 2.0 / t, 1e-15);
    EXPECT_TRUE(s0.rightCols(2).isApprox(Mat::Identity(3, 3).rightCols(2)));
  }
}

TEST(Reflections, Involutions) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (double t : {0.1, 1.0, 9.0}) {
    const ReflectionSet r = reflections_from(family_matrix(k444(), t), t);
    for (int i = 0; i < 3; ++i) {
      const Mat& s = r.matrix(i);
      EXPECT_LE((s * s - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((s * r.fixed_point(i) + r.fixed_point(i)).norm(), 1e-12);
      Vec v(3);
      v << nd(rng), nd(rng), nd(rng);
      v(i) = 0.0;
      EXPECT_EQ(s * v, v);
    }
  }
}

TEST(Reflections, InPlaceProducts) {
  const ReflectionSet r = reflections_from(family_matrix(k444(), 2.5), 2.5);
  Mat m = Mat::Random(3, 3);
  for (int i = 0; i < 3; ++i) {
    Mat left = m, right = m;
    r.apply_left(i, left);
    r.apply_right(right, i);
    EXPECT_LE((left - r.matrix(i) * m).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE((right - m * r.matrix(i)).cwiseAbs().maxCoeff(), 1e-14);
    Vec x = m.col(0);
    r.apply(i, x);
    EXPECT_LE((x - r.matrix(i) * m.col(0)).norm(), 1e-14);
  }
}

TEST(Relations, Examples) {
  const RelationsReport h = verify_relations(reflections_from(family_matrix(k444(), kSqrt2)), k444(), 1e-12);
  EXPECT_TRUE(h.ok);
  EXPECT_LT(h.max_residual, 1e-12);
  EXPECT_EQ(h.pairs.size(), 3u);
  const RelationsReport e = verify_relations(reflections_from(family_matrix(k444(), 8.0)), k444(), 1e-9);
  EXPECT_TRUE(e.ok);
  for (const RelationCheck& c : e.pairs) {
    EXPECT_EQ(c.m, 4);
    EXPECT_TRUE(c.faithful_ok);
    EXPECT_GT(c.min_lower_residual, 1e-3);
  }
}

TEST(Relations, ParameterSweep) {
  for (const CoxeterGraph& g : {k444(), CoxeterGraph::triangle(3, 4, 5), CoxeterGraph::triangle(2, 5, 5)}) {
    if (!find_loop(g).circuit) continue;
    const double th = hyperbolic_parameter(g);
    for (int k = 0; k <= 20; ++k) {
      const double t = th * std::pow(2.0, -5.0 + 0.5 * k);
      EXPECT_TRUE(verify_relations(reflections_from(family_matrix(g, t)), g, 1e-9).ok) << g.to_spec() << " t=" << t;
    }
  }
}

TEST(Relations, CommutingPair) {
  for (const CoxeterGraph& g : lanner_catalog(3))
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (g.weight(i, j).value() == 2) {
          const ReflectionSet r(symmetric_gram(g));
          EXPECT_EQ(r.matrix(i) * r.matrix(j), r.matrix(j) * r.matrix(i));
        }
}

TEST(Projective, SignAndScale) {
  const ReflectionSet r = reflections_from(family_matrix(k444(), 3.0));
  const Mat p = r.matrix(0) * r.matrix(1);
  EXPECT_TRUE(projective_normalize(-p).isApprox(projective_normalize(p), 1e-15));
  EXPECT_TRUE(projective_normalize(7.5 * p).isApprox(projective_normalize(p), 1e-15));
  Mat m = (-r.matrix(0)) * r.matrix(1);
  Mat q = Mat::Identity(3, 3);
  for (int k = 0; k < 4; ++k) q = q * m;
  EXPECT_LE((projective_normalize(q) - Mat::Identity(3, 3)).norm(), 1e-10);
  const Mat n = projective_normalize(p);
  EXPECT_EQ(n.cwiseAbs().maxCoeff(), 1.0);
}
