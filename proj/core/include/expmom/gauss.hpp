#pragma once

#include <vector>

namespace expmom {

// Gauss-Legendre rule on [-1, 1]. Nodes and weights are computed once per
// order by Newton iteration on the Legendre recurrence and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

}  // namespace expmom
