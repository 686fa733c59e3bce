#pragma once

#include "hcox/coxeter.hpp"
#include "hcox/moduli.hpp"
#include "hcox/types.hpp"

#include <optional>
#include <vector>

namespace hcox {

// s_i = I - 2 f_i e_i^T, with f_i the i-th row of A.
class ReflectionSet {
 public:
  explicit ReflectionSet(const GramLikeMatrix& a, std::optional<double> parameter = std::nullopt);

  int size() const { return static_cast<int>(s_.size()); }
  int n() const { return size() - 1; }
  const Mat& matrix(int i) const { return s_[static_cast<std::size_t>(i)]; }
  const std::vector<Mat>& matrices() const { return s_; }
  const GramLikeMatrix& source() const { return a_; }
  Vec fixed_point(int i) const { return a_.row(i); }
  std::optional<double> parameter() const { return t_; }

  // m <- s_i m, touching only what changes.
  void apply_left(int i, Eigen::Ref<Mat> m) const;
  // m <- m s_i
  void apply_right(Eigen::Ref<Mat> m, int i) const;
  // x <- s_i x
  void apply(int i, Eigen::Ref<Vec> x) const;

 private:
  GramLikeMatrix a_;
  std::optional<double> t_;
  std::vector<Mat> s_;
};

ReflectionSet reflections_from(const GramLikeMatrix& a, std::optional<double> parameter = std::nullopt);

// Divide by the entry of largest magnitude (first in row-major order on ties), sign made +1.
Mat projective_normalize(const Mat& m);

struct RelationCheck {
  int i = 0;
  int j = 0;
  int m = 0;
  double residual = 0.0;           // ||normalize((s_i s_j)^m) - I||_F
  double min_lower_residual = 0.0; // min over 1 <= k < m
  bool scalar_ok = false;
  bool faithful_ok = false;
};

struct RelationsReport {
  std::vector<RelationCheck> pairs;
  bool ok = true;
  double max_residual = 0.0;
};

RelationsReport verify_relations(const ReflectionSet& r, const CoxeterGraph& j, double tol);

}  // namespace hcox
