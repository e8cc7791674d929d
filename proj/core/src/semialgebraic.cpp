#include "expmom/semialgebraic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expmom {

double Box::diagonal() const { return std::hypot(width(), height()); }

void SemiAlgebraicSet::validate() const {
  if (!(box.width() > 0.0) || !(box.height() > 0.0))
    throw std::invalid_argument("SemiAlgebraicSet: box must have positive width and height");
}

bool SemiAlgebraicSet::contains(double x, double y) const {
  if (!box.contains(x, y)) return false;
  for (const Poly2& p : constraints)
    if (!(p.eval(x, y) > 0.0)) return false;
  return true;
}

SemiAlgebraicSet unit_box_set(double xmin, double xmax, double ymin, double ymax) {
  return SemiAlgebraicSet{{xmin, xmax, ymin, ymax}, {}};
}

SemiAlgebraicSet translate_set(const SemiAlgebraicSet& s, std::complex<double> a) {
  SemiAlgebraicSet out;
  out.box = {s.box.xmin + a.real(), s.box.xmax + a.real(), s.box.ymin + a.imag(),
             s.box.ymax + a.imag()};
  out.constraints.reserve(s.constraints.size());
  for (const Poly2& p : s.constraints)
    out.constraints.push_back(p.compose_affine(1.0, 0.0, -a.real(), 0.0, 1.0, -a.imag()));
  return out;
}

SemiAlgebraicSet scale_set(const SemiAlgebraicSet& s, std::complex<double> b) {
  if (b == 0.0) throw std::invalid_argument("scale_set: scale factor must be nonzero");
  // Point u lies in b*S iff u/b lies in S; 1/b acts as the 2x2 matrix of the
  // complex multiplication by conj(b)/|b|^2.
  const double n2 = std::norm(b);
  const double ix = b.real() / n2, iy = b.imag() / n2;
  SemiAlgebraicSet out;
  const double cx[4] = {s.box.xmin, s.box.xmax, s.box.xmin, s.box.xmax};
  const double cy[4] = {s.box.ymin, s.box.ymin, s.box.ymax, s.box.ymax};
  double uxmin = 0, uxmax = 0, uymin = 0, uymax = 0;
  for (int k = 0; k < 4; ++k) {
    const std::complex<double> u = b * std::complex<double>(cx[k], cy[k]);
    if (k == 0) {
      uxmin = uxmax = u.real();
      uymin = uymax = u.imag();
    } else {
      uxmin = std::min(uxmin, u.real());
      uxmax = std::max(uxmax, u.real());
      uymin = std::min(uymin, u.imag());
      uymax = std::max(uymax, u.imag());
    }
  }
  out.box = {uxmin, uxmax, uymin, uymax};
  // The rotated box is only bounding, so box membership becomes four linear
  // constraints pulled back through u -> u/b.
  const Poly2 x = Poly2::monomial(1, 0), y = Poly2::monomial(0, 1);
  const Poly2 xin = x * ix + y * iy;   // Re(u/b)
  const Poly2 yin = y * ix - x * iy;   // Im(u/b)
  out.constraints.push_back(xin - Poly2::constant(s.box.xmin));
  out.constraints.push_back(Poly2::constant(s.box.xmax) - xin);
  out.constraints.push_back(yin - Poly2::constant(s.box.ymin));
  out.constraints.push_back(Poly2::constant(s.box.ymax) - yin);
  for (const Poly2& p : s.constraints)
    out.constraints.push_back(p.compose_affine(ix, iy, 0.0, -iy, ix, 0.0));
  return out;
}

SemiAlgebraicSet invert_set(const SemiAlgebraicSet& s, double origin_distance) {
  if (!(origin_distance > 0.0))
    throw std::invalid_argument("invert_set: set must be bounded away from the origin");
  const double r = 1.0 / origin_distance;
  SemiAlgebraicSet out;
  out.box = {-r, r, -r, r};
  const Poly2 x = Poly2::monomial(1, 0), y = Poly2::monomial(0, 1);
  const Poly2 s2 = x * x + y * y;  // |u|^2, positive away from 0
  // 1/u = (x - i y)/|u|^2; box membership of 1/u clears to degree-2 polynomials.
  out.constraints.push_back(x - s2 * s.box.xmin);
  out.constraints.push_back(s2 * s.box.xmax - x);
  out.constraints.push_back(-y - s2 * s.box.ymin);
  out.constraints.push_back(s2 * s.box.ymax + y);
  for (const Poly2& p : s.constraints) out.constraints.push_back(p.inversion_pullback());
  return out;
}

}  // namespace expmom
