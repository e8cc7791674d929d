#include "expmom/poly2.hpp"

#include <cmath>
#include <stdexcept>

namespace expmom {

namespace {

Poly2 poly_pow(const Poly2& base, int n) {
  Poly2 out = Poly2::constant(1.0);
  for (int k = 0; k < n; ++k) out = out * base;
  return out;
}

}  // namespace

Poly2::Poly2(std::vector<Term> terms) {
  for (const Term& t : terms) {
    if (t.index.i < 0 || t.index.j < 0)
      throw std::invalid_argument("Poly2: negative exponent");
    if (t.coeff == 0.0) continue;
    terms_[t.index] += t.coeff;
    if (terms_[t.index] == 0.0) terms_.erase(t.index);
  }
  degree_ = 0;
  for (const auto& [idx, c] : terms_) degree_ = std::max(degree_, idx.total());
}

Poly2 Poly2::constant(double c) { return Poly2({{{0, 0}, c}}); }

Poly2 Poly2::monomial(int i, int j, double c) { return Poly2({{{i, j}, c}}); }

double Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

double Poly2::eval(double x, double y) const {
  if (terms_.empty()) return 0.0;
  // Cache the power tables once; cheaper than std::pow per term.
  double xp[1 + 64], yp[1 + 64];
  const int d = std::min(degree_, 64);
  xp[0] = yp[0] = 1.0;
  for (int k = 1; k <= d; ++k) {
    xp[k] = xp[k - 1] * x;
    yp[k] = yp[k - 1] * y;
  }
  double acc = 0.0;
  for (const auto& [idx, c] : terms_) acc += c * xp[idx.i] * yp[idx.j];
  return acc;
}

std::vector<double> Poly2::coefficients(int order) const {
  if (degree_ > order && !terms_.empty())
    throw std::invalid_argument("Poly2::coefficients: order below polynomial degree");
  std::vector<double> out(static_cast<std::size_t>(moment_dimension(order)), 0.0);
  for (const auto& [idx, c] : terms_) out[static_cast<std::size_t>(multi_index_position(idx))] = c;
  return out;
}

Poly2 Poly2::from_coefficients(int order, const std::vector<double>& c) {
  if (c.size() != static_cast<std::size_t>(moment_dimension(order)))
    throw std::invalid_argument("Poly2::from_coefficients: wrong coefficient count");
  std::vector<Term> terms;
  const auto idx = multi_indices(order);
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0.0) terms.push_back({idx[k], c[k]});
  return Poly2(terms);
}

Poly2 Poly2::operator+(const Poly2& other) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size() + other.terms_.size());
  for (const auto& [idx, c] : terms_) terms.push_back({idx, c});
  for (const auto& [idx, c] : other.terms_) terms.push_back({idx, c});
  return Poly2(terms);
}

Poly2 Poly2::operator-(const Poly2& other) const { return *this + other * -1.0; }

Poly2 Poly2::operator*(const Poly2& other) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size() * other.terms_.size());
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : other.terms_)
      terms.push_back({{a.i + b.i, a.j + b.j}, ca * cb});
  return Poly2(terms);
}

Poly2 Poly2::operator*(double s) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [idx, c] : terms_) terms.push_back({idx, c * s});
  return Poly2(terms);
}

Poly2 Poly2::compose_affine(double ax, double ay, double a0, double bx, double by,
                            double b0) const {
  const Poly2 u({{{1, 0}, ax}, {{0, 1}, ay}, {{0, 0}, a0}});
  const Poly2 v({{{1, 0}, bx}, {{0, 1}, by}, {{0, 0}, b0}});
  Poly2 out;
  for (const auto& [idx, c] : terms_)
    out = out + poly_pow(u, idx.i) * poly_pow(v, idx.j) * c;
  return out;
}

Poly2 Poly2::inversion_pullback() const {
  const Poly2 s({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  Poly2 out;
  for (const auto& [idx, c] : terms_) {
    Poly2 term = Poly2::monomial(idx.i, 0, c) * poly_pow(Poly2::monomial(0, 1, -1.0), idx.j);
    out = out + term * poly_pow(s, degree_ - idx.total());
  }
  return out;
}

}  // namespace expmom
