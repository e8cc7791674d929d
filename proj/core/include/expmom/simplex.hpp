#pragma once

#include <Eigen/Core>

namespace expmom {

// Dense linear program in bounded-variable form:
//
//   minimize    c . x
//   subject to  A x = b,   lo <= x <= hi
//
// with +/-infinity allowed in the bounds. The problems solved here have a
// handful of rows (one per prescribed moment) and up to ~10^5 columns (one
// per grid node), so the basis is tiny and A is kept dense column-major.
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd dual;  // simplex multipliers of the equality rows
  long iterations = 0;
};

// Revised simplex with a two-phase start. Pricing is Dantzig by default and
// switches to Bland's rule after a run of degenerate steps, which restores
// the anti-cycling guarantee while keeping the pivot sequence deterministic.
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-9);

}  // namespace expmom
