#pragma once

#include <stdexcept>
#include <vector>

namespace expmom {

// Value at zero of a smooth function sampled on a ladder of step sizes,
// by Neville extrapolation of the interpolating polynomial. Works for any
// type with scalar multiply, add and divide (double, complex, Eigen vectors).
template <typename T>
T extrapolate_to_zero(const std::vector<double>& steps, std::vector<T> values) {
  if (steps.size() != values.size() || steps.empty())
    throw std::invalid_argument("extrapolate_to_zero: bad ladder");
  const std::size_t n = steps.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = 0; k + level < n; ++k) {
      const double xa = steps[k], xb = steps[k + level];
      values[k] = (values[k + 1] * xa - values[k] * xb) / (xa - xb);
    }
  return values[0];
}

// Geometric ladder eps, eps/2, ..., eps/2^(count-1).
inline std::vector<double> geometric_ladder(double eps, int count) {
  if (!(eps > 0.0) || count < 2) throw std::invalid_argument("geometric_ladder: bad parameters");
  std::vector<double> steps(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) steps[static_cast<std::size_t>(j)] = eps / double(1 << j);
  return steps;
}

}  // namespace expmom
