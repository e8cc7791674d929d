#include "expmom/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expmom {

namespace {

enum class AnnulusRegime { outside, hole, mixed };

AnnulusRegime annulus_regime(const AnnulusShape& a, Complex z, Complex w) {
  const bool zo = std::abs(z) > a.outer, wo = std::abs(w) > a.outer;
  const bool zi = std::abs(z) < a.inner, wi = std::abs(w) < a.inner;
  if (zo && wo) return AnnulusRegime::outside;
  if (zi && wi) return AnnulusRegime::hole;
  if ((zo && wi) || (zi && wo)) return AnnulusRegime::mixed;
  throw std::domain_error("annulus kernel: points must avoid the closed annulus");
}

// All three regimes; the mixed one (one point outside, one in the hole) is
// identically 1 because no monomial pairing survives the polar integral.
Complex annulus_value(const AnnulusShape& a, Complex z, Complex w) {
  const Complex zw = z * std::conj(w);
  switch (annulus_regime(a, z, w)) {
    case AnnulusRegime::outside:
      return (zw - a.outer * a.outer) / (zw - a.inner * a.inner);
    case AnnulusRegime::hole:
      return (a.inner * a.inner - zw) / (a.outer * a.outer - zw);
    case AnnulusRegime::mixed:
      return {1.0, 0.0};
  }
  return {1.0, 0.0};
}

Complex unit_disk_value(Complex z, Complex w) { return 1.0 - 1.0 / (z * std::conj(w)); }

void check_margin(const SemiAlgebraicSet& region, Complex point, const KernelOptions& opts,
                  const char* role) {
  const double margin = opts.margin_scale * region.box.diagonal();
  const double dist = region_distance(region, point.real(), point.imag(), opts.distance_depth);
  if (!(dist > margin))
    throw MarginViolation(std::string("eval_exponential_kernel: ") + role +
                              " point violates the distance margin",
                          point, dist, margin);
}

}  // namespace

KernelEvaluation eval_exponential_kernel(const SemiAlgebraicSet& region, Complex z, Complex w,
                                         const KernelOptions& opts) {
  region.validate();
  opts.quad.validate();
  check_margin(region, z, opts, "z");
  check_margin(region, w, opts, "w");

  auto integrand = [z, w](double x, double y) {
    const Complex zeta(x, y);
    return 1.0 / ((zeta - z) * std::conj(zeta - w));
  };
  const ComplexQuadratureResult integral = integrate_region(ComplexField(integrand), region, opts.quad);
  const Complex value = std::exp(-integral.value / std::numbers::pi);
  KernelEvaluation out;
  out.value = value;
  out.z = z;
  out.w = w;
  out.method = KernelMethod::numeric;
  out.error_estimate = std::abs(value) * integral.error_estimate / std::numbers::pi;
  return out;
}

KernelEvaluation closed_form_kernel(const ClosedFormShape& shape, Complex z, Complex w) {
  KernelEvaluation out;
  out.z = z;
  out.w = w;
  out.method = KernelMethod::closed_form;
  out.value = std::visit(
      [&](const auto& s) -> Complex {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, DiskShape>) {
          if (!(s.radius > 0.0)) throw std::invalid_argument("disk kernel: radius must be positive");
          if (!(std::abs(z) > s.radius) || !(std::abs(w) > s.radius))
            throw std::domain_error("disk kernel: points must lie outside the closed disk");
          // Scaling law applied to the unit disk.
          return unit_disk_value(z / s.radius, w / s.radius);
        } else {
          if (!(0.0 < s.inner && s.inner < s.outer))
            throw std::invalid_argument("annulus kernel: requires 0 < r < R");
          const AnnulusRegime regime = annulus_regime(s, z, w);
          if (regime == AnnulusRegime::mixed)
            throw std::domain_error(
                "annulus kernel: points must both be outside or both inside the hole");
          return annulus_value(s, z, w);
        }
      },
      shape);
  return out;
}

TransformPair transform_kernel(TransformLaw law, Complex parameter,
                               const SemiAlgebraicSet& region, Complex z, Complex w,
                               const KernelOptions& opts) {
  switch (law) {
    case TransformLaw::translation: {
      const SemiAlgebraicSet shifted = translate_set(region, parameter);
      return {eval_exponential_kernel(shifted, z + parameter, w + parameter, opts).value,
              eval_exponential_kernel(region, z, w, opts).value};
    }
    case TransformLaw::scaling: {
      if (parameter == 0.0)
        throw std::invalid_argument("transform_kernel: scaling parameter must be nonzero");
      const SemiAlgebraicSet scaled = scale_set(region, parameter);
      return {eval_exponential_kernel(scaled, parameter * z, parameter * w, opts).value,
              eval_exponential_kernel(region, z, w, opts).value};
    }
    case TransformLaw::inversion: {
      const double margin = opts.margin_scale * region.box.diagonal();
      const double dist0 = region_distance(region, 0.0, 0.0, opts.distance_depth);
      if (!(dist0 > margin))
        throw MarginViolation("transform_kernel: inversion requires the origin outside the region",
                              Complex(0.0, 0.0), dist0, margin);
      const SemiAlgebraicSet inverted = invert_set(region, dist0);
      const Complex lhs = eval_exponential_kernel(inverted, 1.0 / z, 1.0 / w, opts).value;
      const Complex e00 = eval_exponential_kernel(region, 0.0, 0.0, opts).value;
      const Complex ezw = eval_exponential_kernel(region, z, w, opts).value;
      const Complex e0w = eval_exponential_kernel(region, 0.0, w, opts).value;
      const Complex ez0 = eval_exponential_kernel(region, z, 0.0, opts).value;
      return {lhs, e00 * ezw / (e0w * ez0)};
    }
  }
  throw std::invalid_argument("transform_kernel: unknown law");
}

TransformPair transform_kernel(TransformLaw law, Complex parameter, const ClosedFormShape& shape,
                               Complex z, Complex w) {
  switch (law) {
    case TransformLaw::scaling: {
      if (parameter == 0.0)
        throw std::invalid_argument("transform_kernel: scaling parameter must be nonzero");
      const double m = std::abs(parameter);
      ClosedFormShape scaled = shape;
      if (auto* disk = std::get_if<DiskShape>(&scaled))
        disk->radius *= m;
      else {
        auto& ann = std::get<AnnulusShape>(scaled);
        ann.inner *= m;
        ann.outer *= m;
      }
      return {closed_form_kernel(scaled, parameter * z, parameter * w).value,
              closed_form_kernel(shape, z, w).value};
    }
    case TransformLaw::translation:
      throw std::invalid_argument(
          "transform_kernel: translated shapes leave the closed-form family; use the numeric path");
    case TransformLaw::inversion: {
      const auto* ann = std::get_if<AnnulusShape>(&shape);
      if (!ann)
        throw std::invalid_argument(
            "transform_kernel: inversion needs the origin outside the shape (annulus only)");
      const AnnulusShape inverted{1.0 / ann->outer, 1.0 / ann->inner};
      const Complex lhs = closed_form_kernel(inverted, 1.0 / z, 1.0 / w).value;
      // The mixed-regime values in the quotient are exactly 1.
      const Complex e00 = annulus_value(*ann, 0.0, 0.0);
      const Complex ezw = annulus_value(*ann, z, w);
      const Complex e0w = annulus_value(*ann, 0.0, w);
      const Complex ez0 = annulus_value(*ann, z, 0.0);
      return {lhs, e00 * ezw / (e0w * ez0)};
    }
  }
  throw std::invalid_argument("transform_kernel: unknown law");
}

double schwarz_factorization_check(double radius,
                                   const std::vector<std::pair<Complex, Complex>>& samples) {
  if (!(radius > 0.0))
    throw std::invalid_argument("schwarz_factorization_check: radius must be positive");
  double worst = 0.0;
  for (const auto& [z, w] : samples) {
    const Complex e = closed_form_kernel(DiskShape{radius}, z, w).value;
    const Complex reflected = radius * radius / std::conj(w);  // Schwarz reflection of w
    worst = std::max(worst, std::abs(e * z - (z - reflected)));
  }
  return worst;
}

}  // namespace expmom
