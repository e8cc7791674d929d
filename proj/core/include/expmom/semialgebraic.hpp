#pragma once

#include <complex>
#include <vector>

#include "expmom/poly2.hpp"

namespace expmom {

// Axis-aligned rectangle with strictly positive width and height.
struct Box {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  double diagonal() const;
  bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
};

// Compact region of the plane given as a bounding box intersected with a
// conjunction of strict polynomial inequalities p_i > 0. An empty constraint
// list denotes the box itself. A point where some p_i evaluates to exactly
// zero is outside (zero sets carry no area, so integrals are unaffected).
struct SemiAlgebraicSet {
  Box box;
  std::vector<Poly2> constraints;

  // Throws std::invalid_argument on a degenerate box.
  void validate() const;

  bool contains(double x, double y) const;
};

SemiAlgebraicSet unit_box_set(double xmin, double xmax, double ymin, double ymax);

// Image of the set under a translation by the complex number a.
SemiAlgebraicSet translate_set(const SemiAlgebraicSet& s, std::complex<double> a);

// Image of the set under multiplication by a nonzero complex number b.
SemiAlgebraicSet scale_set(const SemiAlgebraicSet& s, std::complex<double> b);

// Image of the set under z -> 1/z. Requires a positive lower bound on the
// distance from the origin to the set, which controls the bounding box of the
// image; the constraints themselves are exact polynomial pullbacks.
SemiAlgebraicSet invert_set(const SemiAlgebraicSet& s, double origin_distance);

}  // namespace expmom
