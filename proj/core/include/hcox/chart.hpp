#pragma once

#include "hcox/moduli.hpp"
#include "hcox/types.hpp"

namespace hcox {

// Affine chart {l = 1} with working coordinates u = B^T (l .* h) / l(h), where B is an
// orthonormal basis of the sum-zero hyperplane. In these coordinates the standard
// simplex P has vertices B^T e_k and barycenter 0 for every parameter.
class Chart {
 public:
  Chart(Vec functional, Vec signs);

  int n() const { return static_cast<int>(ell_.size()) - 1; }
  const Vec& functional() const { return ell_; }
  // sigma_i with l(sigma_i f_i) = 1
  const Vec& signs() const { return sigma_; }
  const Mat& basis() const { return basis_; }

  double eval(const Vec& h) const { return ell_.dot(h); }
  // l(h) / (|l| |h|); chart images are degenerate when this is <= 1e-12.
  double relative_height(const Vec& h) const;
  bool degenerate(const Vec& h) const { return relative_height(h) <= 1e-12; }

  Vec to_chart(const Vec& h) const;
  // Representative with l = 1.
  Vec from_chart(const Vec& u) const;
  // Normalized barycentric coordinates l .* h / l(h) relative to P.
  Vec barycentric(const Vec& h) const;
  Vec from_barycentric(const Vec& lambda) const;
  Vec vertex(int k) const;
  Vec barycenter() const { return Vec::Zero(n()); }
  // Homogeneous barycenter of P, normalized to l = 1.
  Vec base_point() const { return from_chart(barycenter()); }

 private:
  Vec ell_;
  Vec sigma_;
  Mat basis_;
};

// Sum of the dual basis functionals of the signed fixed points sigma_i f_i.
Chart chart_for(const GramLikeMatrix& a);

// Orthonormal basis (Helmert) of {x in R^(n+1): sum x = 0}, as columns.
Mat sum_zero_basis(int n);

}  // namespace hcox
