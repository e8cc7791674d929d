#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace expmom {

using Complex = std::complex<double>;

// Anti-analytic reflection map attached to a line or circle: the analytic
// function S with S(z) = conj(z) on the curve.
//   affine(alpha, beta): S(z) = alpha z + beta, |alpha| = 1 (a line)
//   mobius(center, rho): S(z) = conj(center) + rho^2 / (z - center) (a circle)
class SchwarzMap {
 public:
  enum class Kind { affine, mobius };

  static SchwarzMap affine(Complex alpha, Complex beta);
  static SchwarzMap mobius(Complex center, double rho);

  Kind kind() const { return kind_; }
  Complex alpha() const { return a_; }
  Complex beta() const { return b_; }
  Complex center() const { return a_; }
  double rho() const { return r_; }

  Complex operator()(Complex z) const;

 private:
  SchwarzMap() = default;
  Kind kind_ = Kind::affine;
  Complex a_{}, b_{};
  double r_ = 0.0;
};

// Schwarz function of the line through two distinct points.
SchwarzMap line_schwarz(Complex a, Complex b);

// Schwarz function of the circle with the given center and radius.
SchwarzMap circle_schwarz(Complex center, double rho);

// Positively oriented simple polygon.
struct Polygon {
  std::vector<Complex> vertices;

  double signed_area() const;
  // Throws std::invalid_argument for fewer than 3 vertices, nonpositive
  // area, or self-intersection.
  void validate() const;
};

// Analytic functional f -> (1/2i) sum_j integral over contour_j of
// f(z) S_j(z) dz, each contour a polyline carrying one Schwarz weight.
class AnalyticFunctional {
 public:
  struct Piece {
    std::vector<Complex> contour;  // consecutive segment endpoints
    SchwarzMap weight;
  };

  explicit AnalyticFunctional(std::vector<Piece> pieces, int gauss_order = 32);

  const std::vector<Piece>& pieces() const { return pieces_; }

  // Applies the functional; f receives every quadrature node, so callers can
  // instrument it to observe where the carrier is sampled.
  Complex operator()(const std::function<Complex(Complex)>& f) const;

 private:
  std::vector<Piece> pieces_;
  int gauss_order_;
};

// Polynomial in the complex variable z, coefficients in ascending powers.
struct ZPoly {
  std::vector<Complex> coeffs;

  Complex eval(Complex z) const;
  static ZPoly monomial(int k);
};

// Green-theorem moment: (1/2i) times the contour integral of f(z) conj(z) dz
// over the positively oriented polygon boundary, which equals the area
// integral of f. Per-edge Gauss-Legendre of order 32 (exact far beyond the
// tested degrees).
Complex boundary_moment(const Polygon& polygon, const ZPoly& f);

struct TwoSideQuadrature {
  Complex two_side;          // functional carried by sides 1 and 2 only
  Complex direct;            // all three sides, for diagnostics
  AnalyticFunctional functional;
};

// Quadrature identity for a triangle with the third side rerouted: the
// Schwarz function of every side is entire, so the side-3 term moves to the
// reversed sides 2 and 1 by path deformation, and the resulting functional
// is carried by two sides only.
TwoSideQuadrature two_side_quadrature(const Polygon& triangle, const ZPoly& f);

}  // namespace expmom
