#include "expmom/schwarz.hpp"

#include <cmath>
#include <stdexcept>

#include "expmom/gauss.hpp"

namespace expmom {

SchwarzMap SchwarzMap::affine(Complex alpha, Complex beta) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12)
    throw std::invalid_argument("SchwarzMap: line reflections need |alpha| = 1");
  SchwarzMap map;
  map.kind_ = Kind::affine;
  map.a_ = alpha;
  map.b_ = beta;
  return map;
}

SchwarzMap SchwarzMap::mobius(Complex center, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("SchwarzMap: circle radius must be positive");
  SchwarzMap map;
  map.kind_ = Kind::mobius;
  map.a_ = center;
  map.r_ = rho;
  return map;
}

Complex SchwarzMap::operator()(Complex z) const {
  if (kind_ == Kind::affine) return a_ * z + b_;
  return std::conj(a_) + r_ * r_ / (z - a_);
}

SchwarzMap line_schwarz(Complex a, Complex b) {
  if (a == b) throw std::invalid_argument("line_schwarz: points must be distinct");
  const Complex alpha = std::conj(b - a) / (b - a);
  const Complex beta = (std::conj(a) * b - a * std::conj(b)) / (b - a);
  const SchwarzMap map = SchwarzMap::affine(alpha, beta);
  if (std::abs(map(a) - std::conj(a)) + std::abs(map(b) - std::conj(b)) > 1e-12 * (1.0 + std::abs(a) + std::abs(b)))
    throw std::logic_error("line_schwarz: reflection failed its anchor check");
  return map;
}

SchwarzMap circle_schwarz(Complex center, double rho) {
  const SchwarzMap map = SchwarzMap::mobius(center, rho);
  for (int k = 0; k < 4; ++k) {
    const Complex z = center + std::polar(rho, 1.7 * k + 0.3);
    if (std::abs(map(z) - std::conj(z)) > 1e-12 * (1.0 + std::abs(z)))
      throw std::logic_error("circle_schwarz: reflection failed its anchor check");
  }
  return map;
}

double Polygon::signed_area() const {
  double acc = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = vertices[k], b = vertices[(k + 1) % n];
    acc += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * acc;
}

namespace {

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  auto orient = [](Complex p, Complex q, Complex r) {
    const double v = (q.real() - p.real()) * (r.imag() - p.imag()) -
                     (q.imag() - p.imag()) * (r.real() - p.real());
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  };
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

}  // namespace

void Polygon::validate() const {
  const std::size_t n = vertices.size();
  if (n < 3) throw std::invalid_argument("Polygon: at least 3 vertices required");
  if (!(signed_area() > 1e-14))
    throw std::invalid_argument("Polygon: vertices must be positively oriented with nonzero area");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges share a vertex
      if (segments_cross(vertices[i], vertices[(i + 1) % n], vertices[j], vertices[(j + 1) % n]))
        throw std::invalid_argument("Polygon: boundary is self-intersecting");
    }
}

AnalyticFunctional::AnalyticFunctional(std::vector<Piece> pieces, int gauss_order)
    : pieces_(std::move(pieces)), gauss_order_(gauss_order) {
  if (gauss_order_ < 2) throw std::invalid_argument("AnalyticFunctional: gauss_order must be >= 2");
}

Complex AnalyticFunctional::operator()(const std::function<Complex(Complex)>& f) const {
  const GaussRule& rule = gauss_legendre(gauss_order_);
  Complex acc = 0.0;
  for (const Piece& piece : pieces_) {
    for (std::size_t k = 0; k + 1 < piece.contour.size(); ++k) {
      const Complex a = piece.contour[k], b = piece.contour[k + 1];
      const Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
      Complex edge = 0.0;
      for (int q = 0; q < gauss_order_; ++q) {
        const Complex z = mid + rule.nodes[static_cast<std::size_t>(q)] * half;
        edge += rule.weights[static_cast<std::size_t>(q)] * f(z) * piece.weight(z);
      }
      acc += edge * half;  // dz = half * dt on [-1, 1]
    }
  }
  return acc / Complex(0.0, 2.0);
}

Complex ZPoly::eval(Complex z) const {
  Complex acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

ZPoly ZPoly::monomial(int k) {
  if (k < 0) throw std::invalid_argument("ZPoly::monomial: negative power");
  ZPoly p;
  p.coeffs.assign(static_cast<std::size_t>(k) + 1, Complex(0.0, 0.0));
  p.coeffs.back() = 1.0;
  return p;
}

Complex boundary_moment(const Polygon& polygon, const ZPoly& f) {
  polygon.validate();
  std::vector<AnalyticFunctional::Piece> pieces;
  const std::size_t n = polygon.vertices.size();
  pieces.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = polygon.vertices[k], b = polygon.vertices[(k + 1) % n];
    // On each edge conj(z) coincides with the edge's Schwarz function.
    pieces.push_back({{a, b}, line_schwarz(a, b)});
  }
  const AnalyticFunctional functional(std::move(pieces));
  return functional([&f](Complex z) { return f.eval(z); });
}

TwoSideQuadrature two_side_quadrature(const Polygon& triangle, const ZPoly& f) {
  triangle.validate();
  if (triangle.vertices.size() != 3)
    throw std::invalid_argument("two_side_quadrature: triangle required");
  const Complex v1 = triangle.vertices[0], v2 = triangle.vertices[1], v3 = triangle.vertices[2];
  const SchwarzMap s1 = line_schwarz(v1, v2);
  const SchwarzMap s2 = line_schwarz(v2, v3);
  const SchwarzMap s3 = line_schwarz(v3, v1);

  // The side-3 term integrates an entire function, so its contour deforms
  // onto the other two sides (reversed, to keep the endpoints v3 -> v1).
  AnalyticFunctional rerouted({{{v1, v2}, s1},
                               {{v2, v3}, s2},
                               {{v3, v2, v1}, s3}});
  AnalyticFunctional direct({{{v1, v2}, s1}, {{v2, v3}, s2}, {{v3, v1}, s3}});

  auto eval = [&f](Complex z) { return f.eval(z); };
  return {rerouted(eval), direct(eval), rerouted};
}

}  // namespace expmom
