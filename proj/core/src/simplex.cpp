#include "expmom/simplex.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace expmom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-11;

enum class VarStatus { basic, at_lower, at_upper, free_zero };

struct Tableau {
  Eigen::MatrixXd A;   // m x (n + m), artificials appended
  Eigen::VectorXd b;
  Eigen::VectorXd lo, hi;
  Eigen::VectorXd cost;
  Eigen::VectorXd x;
  std::vector<VarStatus> status;
  std::vector<int> basis;  // variable index per row
  long iterations = 0;

  int rows() const { return static_cast<int>(A.rows()); }
  int cols() const { return static_cast<int>(A.cols()); }
};

// One simplex phase on the current costs. Returns false when the problem is
// unbounded for these costs.
bool run_phase(Tableau& t, double tol, long max_iter) {
  const int m = t.rows(), n = t.cols();
  int stall = 0;
  bool bland = false;
  for (long iter = 0; iter < max_iter; ++iter) {
    ++t.iterations;
    Eigen::MatrixXd B(m, m);
    Eigen::VectorXd cb(m);
    for (int r = 0; r < m; ++r) {
      B.col(r) = t.A.col(t.basis[static_cast<std::size_t>(r)]);
      cb[r] = t.cost[t.basis[static_cast<std::size_t>(r)]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const Eigen::VectorXd y = lu.transpose().solve(cb);
    const Eigen::VectorXd d = t.cost - t.A.transpose() * y;

    int enter = -1;
    double sigma = 0.0, best = tol;
    for (int j = 0; j < n; ++j) {
      const VarStatus st = t.status[static_cast<std::size_t>(j)];
      if (st == VarStatus::basic) continue;
      if (t.hi[j] - t.lo[j] <= 0.0) continue;  // fixed variable
      double score = 0.0, dir = 0.0;
      if (st == VarStatus::at_lower && d[j] < -tol) {
        score = -d[j];
        dir = 1.0;
      } else if (st == VarStatus::at_upper && d[j] > tol) {
        score = d[j];
        dir = -1.0;
      } else if (st == VarStatus::free_zero && std::abs(d[j]) > tol) {
        score = std::abs(d[j]);
        dir = d[j] < 0.0 ? 1.0 : -1.0;
      } else {
        continue;
      }
      if (bland) {  // first eligible index
        enter = j;
        sigma = dir;
        break;
      }
      if (score > best) {
        best = score;
        enter = j;
        sigma = dir;
      }
    }
    if (enter < 0) return true;  // optimal for these costs

    const Eigen::VectorXd u = lu.solve(t.A.col(enter));

    // Ratio test: how far the entering variable can move before a basic
    // variable (or the entering variable itself) hits a bound.
    double t_max = kInf;
    int leave_row = -1;
    double leave_bound = 0.0;
    if (std::isfinite(t.lo[enter]) && std::isfinite(t.hi[enter]))
      t_max = t.hi[enter] - t.lo[enter];  // bound flip
    for (int r = 0; r < m; ++r) {
      const int bi = t.basis[static_cast<std::size_t>(r)];
      const double rate = -sigma * u[r];
      double step = kInf, bound = 0.0;
      if (rate > kPivotTol) {
        if (std::isfinite(t.hi[bi])) {
          step = (t.hi[bi] - t.x[bi]) / rate;
          bound = t.hi[bi];
        }
      } else if (rate < -kPivotTol) {
        if (std::isfinite(t.lo[bi])) {
          step = (t.lo[bi] - t.x[bi]) / rate;
          bound = t.lo[bi];
        }
      }
      if (step < 0.0) step = 0.0;  // numerical drift outside the bound
      const bool better = step < t_max - 1e-13;
      const bool tied = !better && step <= t_max + 1e-13 && leave_row >= 0 &&
                        bi < t.basis[static_cast<std::size_t>(leave_row)];
      if ((better || tied) && std::isfinite(step)) {
        t_max = std::min(t_max, step);
        leave_row = r;
        leave_bound = bound;
      }
    }
    if (!std::isfinite(t_max)) return false;  // unbounded ray

    // Move.
    t.x[enter] += sigma * t_max;
    for (int r = 0; r < m; ++r) t.x[t.basis[static_cast<std::size_t>(r)]] -= sigma * t_max * u[r];

    if (leave_row < 0) {
      // Bound flip: the entering variable traversed to its other bound.
      t.status[static_cast<std::size_t>(enter)] =
          sigma > 0.0 ? VarStatus::at_upper : VarStatus::at_lower;
      t.x[enter] = sigma > 0.0 ? t.hi[enter] : t.lo[enter];
    } else {
      const int out = t.basis[static_cast<std::size_t>(leave_row)];
      t.x[out] = leave_bound;
      t.status[static_cast<std::size_t>(out)] =
          leave_bound == t.lo[out] ? VarStatus::at_lower : VarStatus::at_upper;
      t.basis[static_cast<std::size_t>(leave_row)] = enter;
      t.status[static_cast<std::size_t>(enter)] = VarStatus::basic;
    }

    if (t_max < 1e-12) {
      if (++stall > 40) bland = true;  // anti-cycling
    } else {
      stall = 0;
    }
  }
  throw std::runtime_error("solve_lp: iteration limit exceeded");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  const int m = static_cast<int>(lp.A.rows());
  const int n = static_cast<int>(lp.A.cols());
  if (lp.b.size() != m || lp.c.size() != n || lp.lo.size() != n || lp.hi.size() != n)
    throw std::invalid_argument("solve_lp: inconsistent dimensions");

  Tableau t;
  t.A.resize(m, n + m);
  t.A.leftCols(n) = lp.A;
  t.b = lp.b;
  t.lo.resize(n + m);
  t.hi.resize(n + m);
  t.lo.head(n) = lp.lo;
  t.hi.head(n) = lp.hi;
  t.x = Eigen::VectorXd::Zero(n + m);
  t.status.assign(static_cast<std::size_t>(n + m), VarStatus::at_lower);

  for (int j = 0; j < n; ++j) {
    if (lp.lo[j] > lp.hi[j]) throw std::invalid_argument("solve_lp: empty variable bound");
    if (std::isfinite(lp.lo[j])) {
      t.x[j] = lp.lo[j];
      t.status[static_cast<std::size_t>(j)] = VarStatus::at_lower;
    } else if (std::isfinite(lp.hi[j])) {
      t.x[j] = lp.hi[j];
      t.status[static_cast<std::size_t>(j)] = VarStatus::at_upper;
    } else {
      t.x[j] = 0.0;
      t.status[static_cast<std::size_t>(j)] = VarStatus::free_zero;
    }
  }

  // Artificial start: one signed unit column per row.
  const Eigen::VectorXd r = lp.b - t.A.leftCols(n) * t.x.head(n);
  t.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double s = r[i] < 0.0 ? -1.0 : 1.0;
    t.A.col(n + i) = s * Eigen::VectorXd::Unit(m, i);
    t.lo[n + i] = 0.0;
    t.hi[n + i] = kInf;
    t.x[n + i] = std::abs(r[i]);
    t.basis[static_cast<std::size_t>(i)] = n + i;
    t.status[static_cast<std::size_t>(n + i)] = VarStatus::basic;
  }

  const long max_iter = 50L * (n + m) + 10000L;

  // Phase 1: minimize the artificial mass.
  t.cost = Eigen::VectorXd::Zero(n + m);
  t.cost.tail(m).setOnes();
  run_phase(t, tol, max_iter);
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) infeas += t.x[n + i];
  LpSolution sol;
  sol.iterations = t.iterations;
  if (infeas > 1e-7) {
    sol.status = LpStatus::infeasible;
    return sol;
  }

  // Phase 2: original costs, artificials pinned at zero.
  for (int i = 0; i < m; ++i) t.hi[n + i] = 0.0;
  t.cost.setZero();
  t.cost.head(n) = lp.c;
  const bool bounded = run_phase(t, tol, max_iter);
  sol.iterations = t.iterations;
  if (!bounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.x = t.x.head(n);
  sol.objective = lp.c.dot(sol.x);
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cb(m);
  for (int i = 0; i < m; ++i) {
    B.col(i) = t.A.col(t.basis[static_cast<std::size_t>(i)]);
    cb[i] = t.cost[t.basis[static_cast<std::size_t>(i)]];
  }
  sol.dual = Eigen::PartialPivLU<Eigen::MatrixXd>(B).transpose().solve(cb);
  return sol;
}

}  // namespace expmom
