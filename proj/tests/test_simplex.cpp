#include <doctest.h>

#include <limits>

#include "expmom/simplex.hpp"

using namespace expmom;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("simple bounded LP") {
  // min -x - 2y  s.t.  x + y = 1,  0 <= x,y <= 1   ->  (0, 1)
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Ones(1, 2);
  lp.b = Eigen::VectorXd::Ones(1);
  lp.c = Eigen::Vector2d(-1.0, -2.0);
  lp.lo = Eigen::Vector2d(0.0, 0.0);
  lp.hi = Eigen::Vector2d(1.0, 1.0);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective == doctest::Approx(-2.0));
  CHECK(sol.x[0] == doctest::Approx(0.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
}

TEST_CASE("free variable and duals") {
  // min -mu  s.t.  x - mu = 0,  -1 <= x <= 1, mu free  -> mu = 1
  LinearProgram lp;
  lp.A.resize(1, 2);
  lp.A << 1.0, -1.0;
  lp.b = Eigen::VectorXd::Zero(1);
  lp.c = Eigen::Vector2d(0.0, -1.0);
  lp.lo = Eigen::Vector2d(-1.0, -kInf);
  lp.hi = Eigen::Vector2d(1.0, kInf);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective == doctest::Approx(-1.0));
  CHECK(sol.x[1] == doctest::Approx(1.0));
  // Reduced cost of mu vanishes: -1 - dual * (-1) = 0 -> dual = +1.
  CHECK(sol.dual[0] == doctest::Approx(1.0));
}

TEST_CASE("infeasible program is reported") {
  // x + y = 3 with 0 <= x,y <= 1.
  LinearProgram lp;
  lp.A = Eigen::MatrixXd::Ones(1, 2);
  lp.b = Eigen::VectorXd::Constant(1, 3.0);
  lp.c = Eigen::Vector2d(1.0, 1.0);
  lp.lo = Eigen::Vector2d(0.0, 0.0);
  lp.hi = Eigen::Vector2d(1.0, 1.0);
  CHECK(solve_lp(lp).status == LpStatus::infeasible);
}

TEST_CASE("unbounded program is reported") {
  // min -x  s.t.  x - y = 0,  x, y >= 0 unbounded above.
  LinearProgram lp;
  lp.A.resize(1, 2);
  lp.A << 1.0, -1.0;
  lp.b = Eigen::VectorXd::Zero(1);
  lp.c = Eigen::Vector2d(-1.0, 0.0);
  lp.lo = Eigen::Vector2d(0.0, 0.0);
  lp.hi = Eigen::Vector2d(kInf, kInf);
  CHECK(solve_lp(lp).status == LpStatus::unbounded);
}

TEST_CASE("degenerate ties terminate (anti-cycling)") {
  // Many columns tie at the same ratio; Bland's rule must still terminate.
  const int n = 40;
  LinearProgram lp;
  lp.A.resize(2, n);
  lp.b.resize(2);
  lp.c.resize(n);
  lp.lo = Eigen::VectorXd::Zero(n);
  lp.hi = Eigen::VectorXd::Constant(n, kInf);
  for (int j = 0; j < n; ++j) {
    lp.A(0, j) = 1.0;
    lp.A(1, j) = (j % 2) ? 1.0 : -1.0;
    lp.c[j] = (j % 3) - 1.0;
  }
  lp.b << 1.0, 0.0;
  const LpSolution sol = solve_lp(lp);
  CHECK(sol.status == LpStatus::optimal);
  CHECK(sol.iterations < 5000);
}

TEST_CASE("bound flips are handled") {
  // min x + y  s.t.  x + 2y = 2,  -2 <= x <= 2,  0 <= y <= 2.
  LinearProgram lp;
  lp.A.resize(1, 2);
  lp.A << 1.0, 2.0;
  lp.b = Eigen::VectorXd::Constant(1, 2.0);
  lp.c = Eigen::Vector2d(1.0, 1.0);
  lp.lo = Eigen::Vector2d(-2.0, 0.0);
  lp.hi = Eigen::Vector2d(2.0, 2.0);
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective == doctest::Approx(0.0));  // x = -2, y = 2
}
