#include "hcox/chart.hpp"

#include <cmath>

namespace hcox {

Mat sum_zero_basis(int n) {
  Mat b = Mat::Zero(n + 1, n);
  for (int k = 1; k <= n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b(i, k - 1) = s;
    b(k, k - 1) = -k * s;
  }
  return b;
}

Chart::Chart(Vec functional, Vec signs)
    : ell_(std::move(functional)), sigma_(std::move(signs)), basis_(sum_zero_basis(static_cast<int>(ell_.size()) - 1)) {
  if (ell_.size() < 2 || sigma_.size() != ell_.size()) throw InputError("Chart: inconsistent sizes");
  if ((ell_.array() <= 0.0).any()) throw GeometryError("Chart: functional must be positive on every vertex of P");
}

double Chart::relative_height(const Vec& h) const {
  const double denom = ell_.norm() * h.norm();
  if (!(denom > 0.0) || !std::isfinite(denom)) return 0.0;
  return ell_.dot(h) / denom;
}

Vec Chart::to_chart(const Vec& h) const {
  const double s = ell_.dot(h);
  if (!(std::abs(s) > 0.0) || !std::isfinite(s)) throw GeometryError("point at infinity of the chart");
  return basis_.transpose() * (ell_.cwiseProduct(h) / s);
}

Vec Chart::from_chart(const Vec& u) const {
  const double c = 1.0 / static_cast<double>(ell_.size());
  const Vec lambda = Vec::Constant(ell_.size(), c) + basis_ * u;
  return lambda.cwiseQuotient(ell_);
}

Vec Chart::barycentric(const Vec& h) const {
  const double s = ell_.dot(h);
  if (!(std::abs(s) > 0.0)) throw GeometryError("point at infinity of the chart");
  return ell_.cwiseProduct(h) / s;
}

Vec Chart::from_barycentric(const Vec& lambda) const {
  const double s = lambda.sum();
  if (!(std::abs(s) > 0.0)) throw GeometryError("barycentric coordinates sum to zero");
  return basis_.transpose() * (lambda / s);
}

Vec Chart::vertex(int k) const { return basis_.row(k).transpose(); }

Chart chart_for(const GramLikeMatrix& a) {
  const int s = a.size();
  Eigen::FullPivLU<Mat> lu(a.entries());
  if (!lu.isInvertible()) throw GeometryError("chart_for: fixed points are affinely dependent");
  const Mat inv = lu.inverse();

  // l = A^-1 sigma, so A l = sigma and l(sigma_i f_i) = 1.
  Vec sigma(s);
  bool constant_signs = true;
  for (int i = 0; i < s && constant_signs; ++i) {
    const Vec col = inv.col(i);
    if ((col.array() > 0.0).all()) sigma(i) = 1.0;
    else if ((col.array() < 0.0).all()) sigma(i) = -1.0;
    else constant_signs = false;
  }
  Vec ell;
  if (constant_signs) {
    ell = inv * sigma;
  } else {
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
      Vec sg(s);
      for (int i = 0; i < s; ++i) sg(i) = (mask >> i) & 1u ? -1.0 : 1.0;
      const Vec cand = inv * sg;
      const double worst = cand.minCoeff() / cand.norm();
      if (worst > best) {
        best = worst;
        sigma = sg;
        ell = cand;
      }
    }
    if (!(best > 0.0)) throw GeometryError("chart_for: no sign choice makes the functional positive on P");
  }
  Chart chart(ell, sigma);
  for (int i = 0; i < s; ++i) {
    const double v = sigma(i) * ell.dot(a.row(i));
    if (!(v > 0.0)) throw GeometryError("chart_for: functional not positive on a signed fixed point");
  }
  return chart;
}

}  // namespace hcox
