#pragma once

#include <span>

#include "nsgap/linalg.hpp"

namespace nsgap::detail {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Vector primal;  // x, length = columns of A
  Vector dual;    // y with A^T y <= c and b^T y = value at optimum
};

// Two-phase dense tableau simplex (Dantzig pricing, Bland fallback on
// degenerate stalls) for
//   minimize c^T x  subject to  A x = b, x >= 0.
LpResult solve_standard_lp(const Matrix& a, std::span<const double> b, std::span<const double> c);

}  // namespace nsgap::detail
