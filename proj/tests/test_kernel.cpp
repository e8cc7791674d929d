#include <doctest.h>

#include <cmath>
#include <random>

#include "expmom/kernel.hpp"

using namespace expmom;

namespace {

SemiAlgebraicSet unit_disk_set() {
  return {{-1, 1, -1, 1}, {Poly2({{{0, 0}, 1.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}})}};
}

SemiAlgebraicSet annulus_set(double r, double R) {
  const Poly2 rho2({{{2, 0}, 1.0}, {{0, 2}, 1.0}});
  return {{-R, R, -R, R}, {rho2 - Poly2::constant(r * r), Poly2::constant(R * R) - rho2}};
}

KernelOptions options(int depth = 12) {
  KernelOptions opts;
  opts.quad = {1e-8, depth, 8};
  return opts;
}

Complex disk_reference(Complex z, Complex w) { return 1.0 - 1.0 / (z * std::conj(w)); }

}  // namespace

TEST_CASE("numeric disk kernel against the closed form at z = w = 2") {
  const KernelEvaluation eval = eval_exponential_kernel(unit_disk_set(), {2, 0}, {2, 0}, options());
  CHECK(std::abs(eval.value - Complex(0.75, 0.0)) < 1e-6);
  CHECK(eval.method == KernelMethod::numeric);
  CHECK(eval.error_estimate < 1e-6);
}

TEST_CASE("normalization at infinity") {
  const KernelEvaluation eval =
      eval_exponential_kernel(unit_disk_set(), {1e6, 0}, {1e6, 0}, options(8));
  CHECK(std::abs(eval.value - Complex(1.0, 0.0)) < 1e-6);
}

TEST_CASE("annulus kernel inside the hole against the polar closed form") {
  const KernelEvaluation eval =
      eval_exponential_kernel(annulus_set(1, 2), {0, 0}, {0, 0}, options());
  CHECK(std::abs(eval.value - Complex(0.25, 0.0)) < 1e-5);
}

TEST_CASE("closed forms on the pinned instances") {
  CHECK(closed_form_kernel(DiskShape{1.0}, {2, 0}, {2, 0}).value.real() == doctest::Approx(0.75));
  CHECK(closed_form_kernel(AnnulusShape{1, 2}, {0, 0}, {0, 0}).value.real() ==
        doctest::Approx(0.25));
  CHECK(closed_form_kernel(AnnulusShape{1, 2}, {3, 0}, {3, 0}).value.real() ==
        doctest::Approx(0.625));
  CHECK(closed_form_kernel(AnnulusShape{1, 2}, {3, 0}, {3, 0}).method ==
        KernelMethod::closed_form);
}

TEST_CASE("closed-form regime violations are rejected") {
  CHECK_THROWS_AS(closed_form_kernel(DiskShape{1.0}, {0.5, 0}, {2, 0}), std::domain_error);
  // Mixed regime: one point outside, one inside the hole.
  CHECK_THROWS_AS(closed_form_kernel(AnnulusShape{1, 2}, {3, 0}, {0, 0}), std::domain_error);
  // On the ring.
  CHECK_THROWS_AS(closed_form_kernel(AnnulusShape{1, 2}, {1.5, 0}, {1.5, 0}), std::domain_error);
}

TEST_CASE("margin violations carry a distance report") {
  try {
    eval_exponential_kernel(unit_disk_set(), {1.0001, 0}, {2, 0}, options(8));
    FAIL("expected MarginViolation");
  } catch (const MarginViolation& e) {
    CHECK(e.distance < e.margin);
    CHECK(e.point == Complex(1.0001, 0));
  }
}

TEST_CASE("annulus closed form against quadrature in both regimes") {
  const auto outside = eval_exponential_kernel(annulus_set(1, 2), {3, 0.5}, {2.5, -1}, options());
  CHECK(std::abs(outside.value -
                 closed_form_kernel(AnnulusShape{1, 2}, {3, 0.5}, {2.5, -1}).value) < 1e-5);
  const auto hole = eval_exponential_kernel(annulus_set(1, 2), {0.3, 0.2}, {-0.1, 0.4}, options());
  CHECK(std::abs(hole.value -
                 closed_form_kernel(AnnulusShape{1, 2}, {0.3, 0.2}, {-0.1, 0.4}).value) < 1e-5);
}

TEST_CASE("translation law on the unit disk (numeric path)") {
  const TransformPair pair = transform_kernel(TransformLaw::translation, {1.0, 1.0},
                                              unit_disk_set(), {3, 0}, {3, 0}, options());
  CHECK(std::abs(pair.lhs - pair.rhs) < 2e-6);
  CHECK(std::abs(pair.rhs - disk_reference({3, 0}, {3, 0})) < 1e-6);
  CHECK(pair.lhs.real() == doctest::Approx(1.0 - 1.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("scaling law on the unit disk (numeric and closed paths)") {
  const TransformPair numeric = transform_kernel(TransformLaw::scaling, {2.0, 0.0},
                                                 unit_disk_set(), {3, 0}, {3, 0}, options());
  CHECK(std::abs(numeric.lhs - numeric.rhs) < 2e-6);

  const TransformPair closed = transform_kernel(TransformLaw::scaling, {2.0, 0.0},
                                                ClosedFormShape{DiskShape{1.0}}, {3, 0}, {3, 0});
  CHECK(std::abs(closed.lhs - closed.rhs) < 2e-8);

  const TransformPair rotated =
      transform_kernel(TransformLaw::scaling, {0.0, 2.0}, ClosedFormShape{AnnulusShape{1, 2}},
                       {3, 1}, {3, -1});
  CHECK(std::abs(rotated.lhs - rotated.rhs) < 2e-8);
}

TEST_CASE("inversion law on the annulus (closed forms both sides)") {
  const TransformPair pair = transform_kernel(TransformLaw::inversion, {0, 0},
                                              ClosedFormShape{AnnulusShape{1, 2}}, {3, 0}, {3, 0});
  CHECK(std::abs(pair.lhs - pair.rhs) < 1e-5);
  // Both sides equal 5/32 by direct arithmetic.
  CHECK(pair.lhs.real() == doctest::Approx(5.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("inversion law on the annulus (numeric path)") {
  const TransformPair pair = transform_kernel(TransformLaw::inversion, {0, 0}, annulus_set(1, 2),
                                              {3, 0}, {3, 0}, options());
  CHECK(std::abs(pair.lhs - pair.rhs) < 1e-4);
  CHECK(std::abs(pair.lhs - Complex(5.0 / 32.0, 0.0)) < 1e-4);
}

TEST_CASE("Schwarz factorization residual on circles") {
  std::vector<std::pair<Complex, Complex>> samples;
  for (int k = 0; k < 50; ++k)
    samples.emplace_back(std::polar(2.0, 0.13 * k), std::polar(2.0, 0.29 * k + 0.4));
  CHECK(schwarz_factorization_check(1.0, samples) < 1e-14);

  std::vector<std::pair<Complex, Complex>> wide;
  for (int k = 0; k < 50; ++k)
    wide.emplace_back(std::polar(5.0, 0.17 * k), std::polar(4.0, 0.23 * k + 0.9));
  CHECK(schwarz_factorization_check(2.0, wide) < 1e-14);

  CHECK(schwarz_factorization_check(1.0, {{Complex(2, 0), Complex(2, 0)}}) ==
        doctest::Approx(0.0));
}

TEST_CASE("Hermitian symmetry of the numeric kernel") {
  const auto opts = options();
  const auto ab = eval_exponential_kernel(unit_disk_set(), {2, 1}, {-1.5, 2}, opts);
  const auto ba = eval_exponential_kernel(unit_disk_set(), {-1.5, 2}, {2, 1}, opts);
  CHECK(std::abs(ab.value - std::conj(ba.value)) < 2e-8);
}

TEST_CASE("diagonal values sit in (0, 1) outside the region") {
  const auto opts = options();
  for (const Complex z : {Complex(1.4, 0.3), Complex(-2, 1), Complex(0.5, -1.5)}) {
    const auto eval = eval_exponential_kernel(unit_disk_set(), z, z, opts);
    CHECK(eval.value.imag() == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(eval.value.real() > 0.0);
    CHECK(eval.value.real() < 1.0);
  }
}

TEST_CASE("multiplicativity over a disjoint split of a rectangle") {
  const auto opts = options();
  const auto whole = unit_box_set(-1, 1, -0.5, 0.5);
  const auto left = unit_box_set(-1, 0, -0.5, 0.5);
  const auto right = unit_box_set(0, 1, -0.5, 0.5);
  const Complex z{1.8, 1.1}, w{-1.2, 1.7};
  const Complex ew = eval_exponential_kernel(whole, z, w, opts).value;
  const Complex el = eval_exponential_kernel(left, z, w, opts).value;
  const Complex er = eval_exponential_kernel(right, z, w, opts).value;
  CHECK(std::abs(ew - el * er) < 1e-6);
}
