#pragma once

#include <cstdint>
#include <optional>

#include "expmom/grid.hpp"
#include "expmom/moment_vector.hpp"
#include "expmom/quadrature.hpp"

namespace expmom {

// Shared knobs of the truncated moment-problem solvers. The grid resolution
// controls the discretized linear programs; quadrature drives the final
// integral evaluations; the seed fixes every stochastic search.
struct LProblemConfig {
  int grid = 200;
  QuadratureConfig quad{};
  std::uint64_t seed = 0;

  void validate() const;
};

// Density values on grid nodes, bounded per problem variant ([0,1] or [-L,L]).
struct DiscretizedDensity {
  MidpointGrid grid;
  Eigen::VectorXd values;
};

struct CriticalBound {
  double L0 = 0.0;
  // Extremal coefficient direction; unset for the zero moment vector. The
  // optimal density is L0 * sgn(minimizer).
  std::optional<Poly2> minimizer;
};

// Smallest bound L for which moments a admit a density with |phi| <= L on K:
// the supremum of l_a(p) / ||p||_{1,K} over nonzero p of degree <= order,
// computed from the grid-discretized L1-minimization linear program.
CriticalBound critical_L(const SemiAlgebraicSet& K, int order, const MomentVector& a,
                         const LProblemConfig& cfg);

// Solvability margin of the [0,1]-normalized problem: the maximum over unit
// coefficient vectors c of <a, c> minus the integral of max(p_c, 0) over K.
// The moment problem is solvable iff the margin is <= 0 (up to tolerance).
// Multi-start projected gradient ascent on the coefficient sphere; the grid
// drives the search and adaptive quadrature scores the final candidate.
double krein_margin(const SemiAlgebraicSet& K, int order, const MomentVector& a,
                    const LProblemConfig& cfg);

// Density model used by the extremal reconstruction: characteristic function
// of {p > 0} (densities in [0,1]) or sgn(p) (densities in [-1,1]).
enum class DensityModel { indicator, sign };

struct ExtremalSolution {
  Poly2 p;                      // unit Euclidean coefficient norm
  double critical_L = 0.0;      // critical bound of the target moments
  double moment_residual = 0.0; // Euclidean gap between target and achieved moments
  bool converged = false;
};

// Recovers a polynomial p of degree <= order whose hard-indicator moments
// match a_target: seeded by the critical-bound LP minimizer, then polished by
// Gauss-Newton on a smoothed indicator with a decreasing sharpness schedule.
// A residual well above the quadrature tolerance flags that the target may be
// interior to the moment body, where solutions form a continuum.
ExtremalSolution extremal_reconstruct(const SemiAlgebraicSet& K, int order,
                                      const MomentVector& a_target, const LProblemConfig& cfg,
                                      DensityModel model = DensityModel::indicator);

struct ChebyshevBounds {
  double min_value = 0.0;
  double max_value = 0.0;
  DiscretizedDensity minimizer;
  DiscretizedDensity maximizer;
};

// Extreme values of the integral of psi * phi over all densities phi in [0,1]
// on K with the prescribed moments; two grid LPs. Throws MomentsInfeasible
// when the moment vector is not attainable at the grid resolution.
ChebyshevBounds chebyshev_bounds(const SemiAlgebraicSet& K, int order, const MomentVector& a,
                                 const Poly2& psi, const LProblemConfig& cfg);

class MomentsInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Affine change between the [0, L] and [-L, L] normalizations of the moment
// problem: forward maps a to 2a - L * moments(K), inverse undoes it.
MomentVector normalize_bounds(const MomentVector& a, const SemiAlgebraicSet& K, double L,
                              bool inverse, const QuadratureConfig& quad);

// Moment vector of sgn(p) on K.
MomentVector moments_of_sign(const Poly2& p, const SemiAlgebraicSet& K, int order,
                             const QuadratureConfig& quad);

// Zero-level polyline segments of p over the box of K at the given grid
// resolution (for plotting and Hausdorff comparisons).
std::vector<std::pair<std::complex<double>, std::complex<double>>> zero_set_segments(
    const Poly2& p, const SemiAlgebraicSet& K, int resolution);

}  // namespace expmom
