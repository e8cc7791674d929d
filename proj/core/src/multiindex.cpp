#include "expmom/multiindex.hpp"

#include <stdexcept>

namespace expmom {

int moment_dimension(int order) {
  if (order < 0) throw std::invalid_argument("moment_dimension: order must be non-negative");
  return (order + 1) * (order + 2) / 2;
}

std::vector<MultiIndex> multi_indices(int order) {
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(moment_dimension(order)));
  for (int d = 0; d <= order; ++d)
    for (int i = d; i >= 0; --i) out.push_back({i, d - i});
  return out;
}

int multi_index_position(const MultiIndex& a) {
  if (a.i < 0 || a.j < 0) throw std::invalid_argument("multi_index_position: negative exponent");
  const int d = a.total();
  return d * (d + 1) / 2 + (d - a.i);
}

}  // namespace expmom
