#pragma once

#include "hcox/types.hpp"

namespace hcox::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
  Status status = Status::Infeasible;
  double value = 0.0;
  Vec x;
};

// maximize c.x subject to A x = b, x >= 0. Dense two-phase tableau simplex, Bland's rule.
Result maximize(const Vec& c, const Mat& a, const Vec& b, double tol = 1e-11);

// Is there x >= 0 with A x = b?
Status feasible(const Mat& a, const Vec& b, double tol = 1e-11);

}  // namespace hcox::lp
