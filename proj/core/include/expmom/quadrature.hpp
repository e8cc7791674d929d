#pragma once

#include <complex>
#include <functional>

#include <Eigen/Core>

#include "expmom/moment_vector.hpp"
#include "expmom/semialgebraic.hpp"

namespace expmom {

struct QuadratureConfig {
  double tol = 1e-8;    // requested absolute tolerance
  int max_depth = 12;   // quadtree subdivision limit
  int gauss_order = 8;  // points per axis of the tensor Gauss rule

  // Throws std::invalid_argument when tol <= 0, max_depth < 1 or gauss_order < 2.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |value(max_depth) - value(max_depth-1)|
  long cells_used = 0;
};

struct ComplexQuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  long cells_used = 0;
};

using RealField = std::function<double(double, double)>;
using ComplexField = std::function<std::complex<double>(double, double)>;

// Core engine: integrates `dim` scalar fields over S in a single traversal.
// The quadtree classifies cells against the constraints of S with a 9-point
// stencil (corners, edge midpoints, center); cells of uniform sign are
// integrated by the tensor Gauss rule or dropped, mixed cells refine to
// max_depth and are then integrated with the region indicator applied at
// each Gauss node. `refine_markers` force refinement wherever they change
// sign without acting as indicators (used for integrands with kinks).
// Traversal order and summation order are fixed, so results are
// reproducible bit for bit.
struct FieldIntegral {
  Eigen::VectorXd value;   // result at max_depth
  Eigen::VectorXd coarse;  // same algorithm stopped one level earlier
  long cells_used = 0;
};

FieldIntegral integrate_fields(const std::function<void(double, double, double*)>& fields,
                               int dim, const SemiAlgebraicSet& region,
                               const std::vector<Poly2>& refine_markers,
                               const QuadratureConfig& cfg);

// Integral of a bounded scalar field over the region. A result whose
// error_estimate exceeds cfg.tol signals that the tolerance was not met;
// no exception is thrown for that.
QuadratureResult integrate_region(const RealField& f, const SemiAlgebraicSet& region,
                                  const QuadratureConfig& cfg);

ComplexQuadratureResult integrate_region(const ComplexField& f, const SemiAlgebraicSet& region,
                                         const QuadratureConfig& cfg);

// Moment vector a_ij = integral of x^i y^j over the region, i+j <= order.
// When info is given it receives the worst per-entry error estimate and the
// cell count of the shared traversal.
MomentVector compute_moments(const SemiAlgebraicSet& region, int order,
                             const QuadratureConfig& cfg, QuadratureResult* info = nullptr);

// Integral of |p| over K, with extra refinement near the zero set of p.
QuadratureResult l1_norm(const Poly2& p, const SemiAlgebraicSet& K, const QuadratureConfig& cfg);

// Integral of max(p, 0) over K.
QuadratureResult positive_part_integral(const Poly2& p, const SemiAlgebraicSet& K,
                                        const QuadratureConfig& cfg);

// Conservative lower bound for the distance from a point to the region,
// computed from the cells of a classification tree of the given depth.
// Returns +infinity when the region is empty at that resolution.
double region_distance(const SemiAlgebraicSet& region, double x, double y, int depth = 9);

}  // namespace expmom
