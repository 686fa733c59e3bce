#include "hcox/rep.hpp"

#include <cmath>
#include <limits>

namespace hcox {

ReflectionSet::ReflectionSet(const GramLikeMatrix& a, std::optional<double> parameter) : a_(a), t_(parameter) {
  const int s = a.size();
  s_.reserve(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    Mat m = Mat::Identity(s, s);
    m.col(i) -= 2.0 * a.row(i);
    s_.push_back(std::move(m));
  }
}

void ReflectionSet::apply_left(int i, Eigen::Ref<Mat> m) const {
  // s_i m = m - 2 f_i (row i of m)
  const Eigen::RowVectorXd r = m.row(i);
  m.noalias() -= 2.0 * a_.entries().row(i).transpose() * r;
}

void ReflectionSet::apply_right(Eigen::Ref<Mat> m, int i) const {
  // m s_i = m - 2 (m f_i) e_i^T
  const Vec mf = m * a_.entries().row(i).transpose();
  m.col(i) -= 2.0 * mf;
}

void ReflectionSet::apply(int i, Eigen::Ref<Vec> x) const {
  const double xi = x(i);
  x.noalias() -= 2.0 * xi * a_.entries().row(i).transpose();
}

ReflectionSet reflections_from(const GramLikeMatrix& a, std::optional<double> parameter) {
  return ReflectionSet(a, parameter);
}

Mat projective_normalize(const Mat& m) {
  Eigen::Index bi = 0, bj = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > best) {
        best = std::abs(m(i, j));
        bi = i;
        bj = j;
      }
  if (!(best > 0.0) || !std::isfinite(best)) throw ConditioningError("cannot normalize a zero or non-finite matrix");
  return m / m(bi, bj);
}

RelationsReport verify_relations(const ReflectionSet& r, const CoxeterGraph& j, double tol) {
  if (r.size() != j.size()) throw InputError("verify_relations: shape mismatch");
  RelationsReport rep;
  const int s = r.size();
  const Mat id = Mat::Identity(s, s);
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b) {
      const EdgeWeight w = j.weight(a, b);
      if (w.is_infinite()) continue;
      RelationCheck chk;
      chk.i = a;
      chk.j = b;
      chk.m = w.value();
      const Mat rot = r.matrix(a) * r.matrix(b);
      Mat power = rot;
      chk.min_lower_residual = std::numeric_limits<double>::infinity();
      for (int k = 1; k < chk.m; ++k) {
        chk.min_lower_residual = std::min(chk.min_lower_residual, (projective_normalize(power) - id).norm());
        power = power * rot;
      }
      chk.residual = (projective_normalize(power) - id).norm();
      chk.scalar_ok = chk.residual < tol;
      chk.faithful_ok = chk.min_lower_residual > tol;
      rep.ok = rep.ok && chk.scalar_ok && chk.faithful_ok;
      rep.max_residual = std::max(rep.max_residual, chk.residual);
      rep.pairs.push_back(chk);
    }
  return rep;
}

}  // namespace hcox
