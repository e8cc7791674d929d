#pragma once

#include <map>
#include <vector>

#include "expmom/multiindex.hpp"

namespace expmom {

// Real bivariate polynomial, stored as a sparse map from multi-index to
// coefficient. Zero coefficients are never stored; the degree is the largest
// total degree of a stored term (0 for the zero polynomial). Instances are
// immutable values after construction and safe for concurrent reads.
class Poly2 {
 public:
  struct Term {
    MultiIndex index;
    double coeff;
  };

  Poly2() = default;
  explicit Poly2(std::vector<Term> terms);

  // Convenience factories.
  static Poly2 constant(double c);
  static Poly2 monomial(int i, int j, double c = 1.0);

  double coeff(int i, int j) const;
  const std::map<MultiIndex, double>& terms() const { return terms_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }

  double eval(double x, double y) const;

  // Coefficient vector over the graded-lex basis of degree <= order.
  // Throws if the polynomial has degree larger than order.
  std::vector<double> coefficients(int order) const;
  static Poly2 from_coefficients(int order, const std::vector<double>& c);

  Poly2 operator+(const Poly2& other) const;
  Poly2 operator-(const Poly2& other) const;
  Poly2 operator*(const Poly2& other) const;
  Poly2 operator*(double s) const;
  Poly2 operator-() const { return *this * -1.0; }

  // Substitution p(ax*x + ay*y + a0, bx*x + by*y + b0).
  Poly2 compose_affine(double ax, double ay, double a0, double bx, double by, double b0) const;

  // Pullback under the complex inversion z -> 1/z, cleared of denominators:
  // returns (x^2+y^2)^deg * p(x/(x^2+y^2), -y/(x^2+y^2)), which has the same
  // sign as p(1/z) away from the origin.
  Poly2 inversion_pullback() const;

  friend bool operator==(const Poly2&, const Poly2&) = default;

 private:
  std::map<MultiIndex, double> terms_;
  int degree_ = 0;
};

inline Poly2 operator*(double s, const Poly2& p) { return p * s; }

}  // namespace expmom
