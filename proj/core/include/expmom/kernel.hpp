#pragma once

#include <complex>
#include <stdexcept>
#include <variant>
#include <vector>

#include "expmom/quadrature.hpp"
#include "expmom/semialgebraic.hpp"

namespace expmom {

using Complex = std::complex<double>;

enum class KernelMethod { numeric, closed_form };

struct KernelEvaluation {
  Complex value{1.0, 0.0};
  Complex z{}, w{};
  KernelMethod method = KernelMethod::numeric;
  double error_estimate = 0.0;
};

// Thrown when an evaluation point sits closer to the region than the
// configured margin; carries the offending distance bound.
class MarginViolation : public std::domain_error {
 public:
  MarginViolation(const std::string& what, Complex point, double distance, double margin)
      : std::domain_error(what), point(point), distance(distance), margin(margin) {}

  Complex point;
  double distance;
  double margin;
};

struct KernelOptions {
  QuadratureConfig quad{};
  double margin_scale = 1e-3;  // margin = margin_scale * box diagonal
  int distance_depth = 9;      // classification depth of the distance bound
};

// Exponential transform of the region evaluated at exterior points:
//   E(z, conj(w)) = exp( -(1/pi) * integral over S of dA(zeta) /
//                        ((zeta - z)(conj(zeta) - conj(w))) ).
// Both points must clear the margin in every component of the complement.
// The integral is computed as two real integrals and exponentiated
// afterwards, so no logarithm branch is ever chosen.
KernelEvaluation eval_exponential_kernel(const SemiAlgebraicSet& region, Complex z, Complex w,
                                         const KernelOptions& opts = {});

struct DiskShape {
  double radius = 1.0;
};
struct AnnulusShape {
  double inner = 1.0;
  double outer = 2.0;
};
using ClosedFormShape = std::variant<DiskShape, AnnulusShape>;

// Closed forms: the disk of radius R (through the scaling law applied to the
// unit disk) gives 1 - R^2/(z conj(w)) for |z|,|w| > R. The annulus A(r,R)
// gives (z conj(w) - R^2)/(z conj(w) - r^2) outside and
// (r^2 - z conj(w))/(R^2 - z conj(w)) inside the hole; these are the forms
// normalized so that E tends to 1 at infinity and E(0,0) = r^2/R^2, and they
// are validated against the quadrature path in the test suite.
KernelEvaluation closed_form_kernel(const ClosedFormShape& shape, Complex z, Complex w);

enum class TransformLaw { inversion, translation, scaling };

struct TransformPair {
  Complex lhs{}, rhs{};
};

// Both sides of a transformation identity, each computed independently.
// Numeric path: the transformed region is rebuilt as a semi-algebraic set
// and integrated from scratch.
//   inversion:    E_{S^-1}(1/z, conj(1/w))  vs  E(0,0) E(z,w) / (E(0,w) E(z,0))
//   translation:  E_{S+a}(z+a, conj(w+a))   vs  E(z,w)
//   scaling:      E_{bS}(bz, conj(bw))      vs  E(z,w)
// The inversion denominator cannot vanish for exterior points.
TransformPair transform_kernel(TransformLaw law, Complex parameter, const SemiAlgebraicSet& region,
                               Complex z, Complex w, const KernelOptions& opts = {});

// Closed-form path: supported where the transformed shape stays in the
// closed-form family (scaling of disks and annuli, inversion of annuli).
TransformPair transform_kernel(TransformLaw law, Complex parameter, const ClosedFormShape& shape,
                               Complex z, Complex w);

// Circle factorization residual: on the circle of radius R the Schwarz
// reflection is w* = R^2/conj(w), and the disk kernel satisfies
// E(z, conj(w)) * z = z - R^2/conj(w) identically. Returns the maximum
// absolute residual of that identity over the samples.
double schwarz_factorization_check(double radius,
                                   const std::vector<std::pair<Complex, Complex>>& samples);

}  // namespace expmom
