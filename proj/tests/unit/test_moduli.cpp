#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hcox;
using fixtures::k444;
using fixtures::kSqrt2;

namespace {

Mat m2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

// A Lanner graph with four nodes forming a single circuit.
CoxeterGraph four_circuit() {
  for (const CoxeterGraph& g : lanner_catalog(3)) {
    const LoopInfo l = find_loop(g);
    if (l.circuit && l.circuit->size() == 4) return g;
  }
  throw std::runtime_error("no four-node circuit in the catalog");
}

}  // namespace

TEST(StarJ, Examples) {
  EXPECT_TRUE(check_star_J(family_matrix(k444(), 1.0), k444()));
  EXPECT_TRUE(check_star_J(GramLikeMatrix(cartan_matrix(k444()).entries()), k444()));
  Mat a = family_matrix(k444(), 1.0).entries();
  a(0, 1) = 0.5;
  const StarReport rep = check_star_J(GramLikeMatrix(a), k444());
  EXPECT_FALSE(rep);
  ASSERT_FALSE(rep.violations.empty());
  EXPECT_EQ(rep.violations.front().i, 0);
  EXPECT_EQ(rep.violations.front().j, 1);
  EXPECT_EQ(rep.violations.front().kind, "positivity");
}

TEST(StarJ, EveryFamilyMember) {
  for (const CoxeterGraph& g : {k444(), CoxeterGraph::triangle(3, 4, 5), four_circuit()})
    for (double t : {1.0 / 32, 0.3, 1.0, 2.5, 32.0}) EXPECT_TRUE(check_star_J(family_matrix(g, t), g)) << t;
}

TEST(CyclicProducts, Examples) {
  for (double t : {0.5, 1.0, 3.0}) {
    const auto cp = cyclic_products(family_matrix(k444(), t));
    EXPECT_NEAR(cp.at({0, 1, 2}), -t * t * t / 8.0, 1e-14 * t * t * t);
    EXPECT_NEAR(cp.at({0, 2, 1}), -1.0 / (t * t * t), 1e-14 / (t * t * t));
    for (int i = 0; i < 3; ++i) EXPECT_EQ(cp.at({i}), 1.0);
    EXPECT_NEAR(cp.at({0, 1}), 0.5, 1e-15);
  }
  Mat tree = Mat::Identity(3, 3);
  tree(0, 1) = -0.3;
  tree(1, 0) = -2.0;
  tree(1, 2) = -0.7;
  tree(2, 1) = -0.1;
  for (const auto& [cycle, v] : cyclic_products(GramLikeMatrix(tree)))
    if (cycle.size() >= 3) EXPECT_EQ(v, 0.0);
}

TEST(DiagEquivalent, Examples) {
  const auto c = diag_equivalent(GramLikeMatrix(m2(1, 2, 3, 1)), GramLikeMatrix(m2(1, 6, 1, 1)));
  ASSERT_TRUE(c);
  EXPECT_NEAR(c->lambdas()(0), 1.0, 1e-15);
  EXPECT_NEAR(c->lambdas()(1), 1.0 / 3.0, 1e-15);
  const GramLikeMatrix a = family_matrix(k444(), 2.0);
  const auto id = diag_equivalent(a, a);
  ASSERT_TRUE(id);
  EXPECT_TRUE(id->lambdas().isApprox(Vec::Ones(3)));
  EXPECT_FALSE(diag_equivalent(family_matrix(k444(), 2.0), family_matrix(k444(), 2.001)));
  EXPECT_THROW(diag_equivalent(a, GramLikeMatrix(m2(1, 2, 3, 1))), InputError);
}

TEST(DiagEquivalent, RejectsZeroSymmetryViolation) { EXPECT_THROW(GramLikeMatrix(m2(1, 0, 3, 1)), InputError); }

// Random zero-symmetric matrices, conjugated by random diagonal matrices, with and without a
// perturbation that changes one cyclic product.
TEST(DiagEquivalent, RandomConjugations) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0), mag(-2.0, 2.0), coin(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 3 + trial % 3;
    Mat a = Mat::Identity(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j)
        if (coin(rng) < 0.7) {
          a(i, j) = u(rng);
          a(j, i) = u(rng);
          if (a(i, j) == 0.0 || a(j, i) == 0.0) a(i, j) = a(j, i) = 0.0;
        }
    Vec lam(s);
    for (int i = 0; i < s; ++i) lam(i) = std::exp(mag(rng)) * (coin(rng) < 0.3 ? -1.0 : 1.0);
    const Mat b = lam.asDiagonal() * a * lam.cwiseInverse().asDiagonal();
    const auto c = diag_equivalent(GramLikeMatrix(a), GramLikeMatrix(b));
    ASSERT_TRUE(c) << trial;
    EXPECT_LE((c->apply(a) - b).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff()));

    // Scaling a single entry changes every cyclic product through it.
    int pi = -1, pj = -1;
    for (int i = 0; i < s && pi < 0; ++i)
      for (int j = 0; j < s; ++j)
        if (i != j && a(i, j) != 0.0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) continue;
    Mat bad = b;
    bad(pi, pj) *= 1.01;
    EXPECT_FALSE(diag_equivalent(GramLikeMatrix(a), GramLikeMatrix(bad))) << trial;
  }
}

TEST(Moduli, FamilyCoordinates) {
  for (double t : {1.0 / 32, 0.5, 1.0, kSqrt2, 7.0, 32.0}) {
    const ModuliCoordinate m = moduli_coordinate(family_matrix(k444(), t), k444());
    EXPECT_NEAR(m.phi, -t * t * t / 8.0, 1e-13 * t * t * t);
    EXPECT_NEAR(m.phi_tilde, -1.0 / (t * t * t), 1e-13 / (t * t * t));
    EXPECT_NEAR(m.mu, t * t * t, 1e-12 * t * t * t);
    EXPECT_NEAR(m.phi * m.phi_tilde, 0.125, 1e-14);
  }
  const ModuliCoordinate h = moduli_coordinate(GramLikeMatrix(cartan_matrix(k444()).entries()), k444());
  EXPECT_NEAR(h.mu, 2.8284271247461903, 1e-12);
}

TEST(Moduli, MuIsTPowerNPlusOne) {
  const CoxeterGraph g4 = four_circuit();
  for (double t : {0.1, 0.9, 3.0, 20.0}) {
    EXPECT_NEAR(moduli_coordinate(family_matrix(g4, t), g4).mu, std::pow(t, 4), 1e-12 * std::pow(t, 4));
    const CoxeterGraph g345 = CoxeterGraph::triangle(3, 4, 5);
    EXPECT_NEAR(moduli_coordinate(family_matrix(g345, t), g345).mu, t * t * t, 1e-12 * t * t * t);
  }
  EXPECT_THROW(moduli_coordinate(family_matrix(k444(), 1.0), CoxeterGraph::parse("n=2;m01=4;m12=4")), InputError);
}

// The closing factor of the circuit product is a_{n0}; a_{n1} vanishes on a longer circuit.
TEST(Moduli, ClosingIndex) {
  const CoxeterGraph g = four_circuit();
  const std::vector<int> c = *find_loop(g).circuit;
  const GramLikeMatrix a = family_matrix(g, 1.7);
  double closed = 1.0, misprint = 1.0;
  for (int k = 0; k + 1 < 4; ++k) {
    closed *= a(c[k], c[k + 1]);
    misprint *= a(c[k], c[k + 1]);
  }
  closed *= a(c[3], c[0]);
  misprint *= a(c[3], c[1]);
  EXPECT_NE(closed, 0.0);
  EXPECT_EQ(misprint, 0.0);
  EXPECT_NEAR(moduli_coordinate(a, g).phi, closed, 1e-14);
}

TEST(Family, Examples) {
  const GramLikeMatrix a1 = family_matrix(k444(), 1.0);
  Mat expected(3, 3);
  expected << 1, -0.5, -1, -1, 1, -0.5, -0.5, -1, 1;
  EXPECT_TRUE(a1.entries().isApprox(expected, 1e-15));
  const Mat diff = family_matrix(k444(), kSqrt2).entries() - cartan_matrix(k444()).entries();
  EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(family_matrix(k444(), 0.0), InputError);
  EXPECT_THROW(family_matrix(CoxeterGraph::triangle(3, 3, 3), 1.0), InputError);
}

TEST(Family, HyperbolicParameter) {
  EXPECT_NEAR(hyperbolic_parameter(k444()), kSqrt2, 1e-14);
  EXPECT_NEAR(hyperbolic_parameter(CoxeterGraph::triangle(5, 5, 5)), 1.0 / std::cos(M_PI / 5), 1e-14);
  EXPECT_NEAR(hyperbolic_parameter(CoxeterGraph::triangle(5, 5, 5)), 1.2360680, 1e-7);
  const CoxeterGraph g = CoxeterGraph::triangle(3, 4, 5);
  const GramLikeMatrix h = family_matrix(g, hyperbolic_parameter(g));
  EXPECT_TRUE(diag_equivalent(h, symmetric_gram(g)));
  const GramLikeMatrix e = family_matrix(k444(), kSqrt2);
  EXPECT_LE((e.entries() - e.entries().transpose()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Family, RelabelSymmetry) {
  const int reverse[] = {0, 2, 1};
  for (double t : {0.25, 0.9, kSqrt2, 3.0, 11.0}) {
    const GramLikeMatrix flipped = permuted(family_matrix(k444(), t), reverse);
    EXPECT_TRUE(diag_equivalent(flipped, family_matrix(k444(), 2.0 / t))) << t;
    EXPECT_FALSE(diag_equivalent(flipped, family_matrix(k444(), 2.2 / t))) << t;
  }
  const CoxeterGraph g = CoxeterGraph::triangle(5, 5, 5);
  const double c2 = std::pow(std::cos(M_PI / 5), 2);
  EXPECT_TRUE(diag_equivalent(permuted(family_matrix(g, 0.7), reverse), family_matrix(g, 1.0 / (0.7 * c2))));
}
