#pragma once

#include "hcox/coxeter.hpp"
#include "hcox/types.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hcox {

// Unit-diagonal matrix whose rows are the fixed points f_i of the reflections.
class GramLikeMatrix {
 public:
  explicit GramLikeMatrix(Mat entries);

  const Mat& entries() const { return a_; }
  int size() const { return static_cast<int>(a_.rows()); }
  double operator()(int i, int j) const { return a_(i, j); }
  Vec row(int i) const { return a_.row(i).transpose(); }

 private:
  Mat a_;
};

// Symmetric matrix with off-diagonals -cos(pi/m_ij).
GramLikeMatrix symmetric_gram(const CoxeterGraph& j);

// B(perm[i], perm[j]) = A(i, j).
GramLikeMatrix permuted(const GramLikeMatrix& a, std::span<const int> perm);

struct StarViolation {
  int i = 0;
  int j = 0;
  std::string kind;  // positivity, zero, product, infinite-product
  double value = 0.0;
};

struct StarReport {
  bool ok = true;
  std::vector<StarViolation> violations;
  explicit operator bool() const { return ok; }
};

StarReport check_star_J(const GramLikeMatrix& a, const CoxeterGraph& j);

// Keys: {i} for the diagonal, {i,j} with i<j for a_ij*a_ji, and simple
// cycles of length >= 3 starting at their smallest index, in both orientations.
using IndexCycle = std::vector<int>;
std::map<IndexCycle, double> cyclic_products(const GramLikeMatrix& a);

class DiagonalConjugator {
 public:
  explicit DiagonalConjugator(Vec lambdas);  // rescaled so lambda_0 = 1

  const Vec& lambdas() const { return lambda_; }
  // diag(lambda) * m * diag(lambda)^-1
  Mat apply(const Mat& m) const;

 private:
  Vec lambda_;
};

// Conjugator with diag(lambda) A diag(lambda)^-1 = B, if one exists.
std::optional<DiagonalConjugator> diag_equivalent(const GramLikeMatrix& a, const GramLikeMatrix& b);

struct ModuliCoordinate {
  double phi = 0.0;        // forward product around the circuit
  double phi_tilde = 0.0;  // backward product
  double mu = 0.0;         // |phi| / prod cos^2
  std::vector<int> circuit;
};

ModuliCoordinate moduli_coordinate(const GramLikeMatrix& a, const CoxeterGraph& j);

// Entry (c_k, c_k+1) = -t cos^2(pi/m), entry (c_k+1, c_k) = -1/t around the circuit.
GramLikeMatrix family_matrix(const CoxeterGraph& j, double t);

// t at which family_matrix is diagonally equivalent to symmetric_gram.
double hyperbolic_parameter(const CoxeterGraph& j);

// Circuit of a Lanner circuit graph; throws InputError otherwise.
std::vector<int> lanner_circuit(const CoxeterGraph& j);

}  // namespace hcox
