#pragma once

#include <vector>

#include <Eigen/Core>

#include "expmom/semialgebraic.hpp"

namespace expmom {

// Tensor midpoint rule on the bounding box, restricted to the nodes that lie
// inside the region. Weights are the full cell areas, which is conservative
// for the tolerances used by the discretized moment problems.
struct MidpointGrid {
  std::vector<double> x, y;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }

  // n x d matrix of monomial values x_k^i y_k^j in graded-lex column order.
  Eigen::MatrixXd monomials(int order) const;

  // Weighted moment vector of nodewise values: sum_k w_k phi_k x_k^a.
  Eigen::VectorXd moments_of(const Eigen::VectorXd& phi, int order) const;
};

MidpointGrid make_midpoint_grid(const SemiAlgebraicSet& region, int resolution);

}  // namespace expmom
