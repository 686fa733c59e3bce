#include "hcox/lp.hpp"

#include <cmath>
#include <vector>

namespace hcox::lp {

namespace {

struct Tableau {
  Mat t;  // rows 0..m-1 constraints, row m objective (reduced costs, maximize form)
  std::vector<int> basis;
  int m = 0;
  int cols = 0;  // structural + artificial columns; rhs is the last column

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= m; ++i)
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    basis[r] = c;
  }

  // Objective row holds z_j - c_j; optimal when all >= -tol over allowed columns.
  Status run(const std::vector<char>& allowed, double tol, int cap) {
    for (int it = 0; it < cap; ++it) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && t(m, j) < -tol) {
          enter = j;
          break;
        }
      if (enter < 0) return Status::Optimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) <= tol) continue;
        const double ratio = t(i, cols) / t(i, enter);
        if (leave < 0 || ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }
};

Tableau phase_one(const Mat& a, const Vec& b, double tol, int cap, Status& status) {
  const int m = static_cast<int>(a.rows()), nv = static_cast<int>(a.cols());
  Tableau tab;
  tab.m = m;
  tab.cols = nv + m;
  tab.t = Mat::Zero(m + 1, nv + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double sgn = b(i) < 0 ? -1.0 : 1.0;
    tab.t.row(i).head(nv) = sgn * a.row(i);
    tab.t(i, nv + i) = 1.0;
    tab.t(i, nv + m) = sgn * b(i);
    tab.basis[i] = nv + i;
  }
  // maximize -sum(artificials): objective row = -(sum of constraint rows) on structural columns
  for (int i = 0; i < m; ++i) {
    tab.t.row(m).head(nv) -= tab.t.row(i).head(nv);
    tab.t(m, nv + m) -= tab.t(i, nv + m);
  }
  std::vector<char> allowed(static_cast<std::size_t>(nv + m), 1);
  status = tab.run(allowed, tol, cap);
  if (status != Status::Optimal) return tab;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (-tab.t(m, nv + m) > 1e-9 * scale) {
    status = Status::Infeasible;
    return tab;
  }
  // Drive artificial variables out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < nv) continue;
    for (int j = 0; j < nv; ++j)
      if (std::abs(tab.t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
  }
  return tab;
}

}  // namespace

Result maximize(const Vec& c, const Mat& a, const Vec& b, double tol) {
  const int m = static_cast<int>(a.rows()), nv = static_cast<int>(a.cols());
  if (c.size() != nv || b.size() != m) throw InputError("lp::maximize: shape mismatch");
  const int cap = 50 * (m + nv) + 100;
  Result res;
  Tableau tab = phase_one(a, b, tol, cap, res.status);
  if (res.status != Status::Optimal) return res;

  tab.t.row(m).setZero();
  tab.t.row(m).head(nv) = -c.transpose();
  for (int i = 0; i < m; ++i) {
    const int bj = tab.basis[i];
    if (bj < nv && c(bj) != 0.0) tab.t.row(m) += c(bj) * tab.t.row(i);
  }
  std::vector<char> allowed(static_cast<std::size_t>(nv + m), 0);
  for (int j = 0; j < nv; ++j) allowed[j] = 1;
  res.status = tab.run(allowed, tol, cap);
  if (res.status != Status::Optimal) return res;
  res.x = Vec::Zero(nv);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < nv) res.x(tab.basis[i]) = tab.t(i, nv + m);
  res.value = c.dot(res.x);
  return res;
}

Status feasible(const Mat& a, const Vec& b, double tol) {
  Status st;
  phase_one(a, b, tol, 50 * static_cast<int>(a.rows() + a.cols()) + 100, st);
  return st;
}

}  // namespace hcox::lp
