#pragma once

#include <stdexcept>

#include <Eigen/Core>

#include "expmom/multiindex.hpp"

namespace expmom {

// Truncated moment sequence a = (a_ij) over all i+j <= order, stored densely
// in graded-lex order; the entry count is always (N+1)(N+2)/2.
struct MomentVector {
  int order = 0;
  Eigen::VectorXd entries;

  static MomentVector zero(int order_) {
    return {order_, Eigen::VectorXd::Zero(moment_dimension(order_))};
  }

  double at(int i, int j) const { return entries[multi_index_position({i, j})]; }
  double& at(int i, int j) { return entries[multi_index_position({i, j})]; }

  // Throws std::invalid_argument when the entry count disagrees with order.
  void validate() const;
};

inline void MomentVector::validate() const {
  if (entries.size() != moment_dimension(order))
    throw std::invalid_argument("MomentVector: entry count must be (N+1)(N+2)/2");
}

}  // namespace expmom
