#include "expmom/grid.hpp"

#include <stdexcept>

#include "expmom/multiindex.hpp"

namespace expmom {

Eigen::MatrixXd MidpointGrid::monomials(int order) const {
  const auto indices = multi_indices(order);
  Eigen::MatrixXd M(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(indices.size()));
  std::vector<double> xp(static_cast<std::size_t>(order) + 1), yp(static_cast<std::size_t>(order) + 1);
  for (std::size_t k = 0; k < size(); ++k) {
    xp[0] = yp[0] = 1.0;
    for (int d = 1; d <= order; ++d) {
      xp[static_cast<std::size_t>(d)] = xp[static_cast<std::size_t>(d - 1)] * x[k];
      yp[static_cast<std::size_t>(d)] = yp[static_cast<std::size_t>(d - 1)] * y[k];
    }
    for (std::size_t c = 0; c < indices.size(); ++c)
      M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c)) =
          xp[static_cast<std::size_t>(indices[c].i)] * yp[static_cast<std::size_t>(indices[c].j)];
  }
  return M;
}

Eigen::VectorXd MidpointGrid::moments_of(const Eigen::VectorXd& phi, int order) const {
  if (phi.size() != static_cast<Eigen::Index>(size()))
    throw std::invalid_argument("MidpointGrid::moments_of: node count mismatch");
  const Eigen::MatrixXd M = monomials(order);
  return M.transpose() * (phi.array() * Eigen::Map<const Eigen::ArrayXd>(w.data(), M.rows())).matrix();
}

MidpointGrid make_midpoint_grid(const SemiAlgebraicSet& region, int resolution) {
  region.validate();
  if (resolution < 1) throw std::invalid_argument("make_midpoint_grid: resolution must be >= 1");
  MidpointGrid grid;
  const double hx = region.box.width() / resolution;
  const double hy = region.box.height() / resolution;
  const double cell = hx * hy;
  grid.x.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double xi = region.box.xmin + (i + 0.5) * hx;
    for (int j = 0; j < resolution; ++j) {
      const double yj = region.box.ymin + (j + 0.5) * hy;
      if (!region.contains(xi, yj)) continue;
      grid.x.push_back(xi);
      grid.y.push_back(yj);
      grid.w.push_back(cell);
    }
  }
  return grid;
}

}  // namespace expmom
