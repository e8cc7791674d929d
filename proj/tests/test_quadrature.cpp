#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expmom/quadrature.hpp"

using namespace expmom;

namespace {

const QuadratureConfig kFast{1e-8, 10, 8};

SemiAlgebraicSet unit_disk_set() {
  return {{-1, 1, -1, 1}, {Poly2({{{0, 0}, 1.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}})}};
}

SemiAlgebraicSet half_slab_set() {
  return {{-1, 1, -1, 1}, {Poly2::monomial(1, 0)}};
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS((QuadratureConfig{0.0, 12, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureConfig{1e-8, 0, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((QuadratureConfig{1e-8, 12, 1}.validate()), std::invalid_argument);
}

TEST_CASE("box area is exact") {
  const auto r = integrate_region(RealField([](double, double) { return 1.0; }),
                                  unit_box_set(0, 1, 0, 1), kFast);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.cells_used >= 1);
}

TEST_CASE("disk area approaches pi") {
  const auto r = integrate_region(RealField([](double, double) { return 1.0; }),
                                  unit_disk_set(), QuadratureConfig{1e-6, 13, 8});
  CHECK(std::abs(r.value - std::numbers::pi) < 1e-5);
}

TEST_CASE("half-slab first moment") {
  const auto r = integrate_region(RealField([](double x, double) { return x; }),
                                  half_slab_set(), kFast);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("compute_moments on the pinned instances") {
  const MomentVector box = compute_moments(unit_box_set(0, 1, 0, 1), 1, kFast);
  CHECK(box.at(0, 0) == doctest::Approx(1.0));
  CHECK(box.at(1, 0) == doctest::Approx(0.5));
  CHECK(box.at(0, 1) == doctest::Approx(0.5));

  const MomentVector slab = compute_moments(half_slab_set(), 1, kFast);
  CHECK(slab.at(0, 0) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(slab.at(1, 0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(slab.at(0, 1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("contradictory constraints give the zero vector") {
  SemiAlgebraicSet empty{{-1, 1, -1, 1}, {Poly2::monomial(1, 0), -Poly2::monomial(1, 0)}};
  const MomentVector m = compute_moments(empty, 2, kFast);
  CHECK(m.entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("l1 norm and positive part on the pinned instances") {
  const auto box = unit_box_set(0, 1, 0, 1);
  const auto sym = unit_box_set(-1, 1, -1, 1);
  CHECK(l1_norm(Poly2::constant(1.0), box, kFast).value == doctest::Approx(1.0));
  CHECK(l1_norm(Poly2::monomial(1, 0), sym, kFast).value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(l1_norm(Poly2(), box, kFast).value == 0.0);

  CHECK(positive_part_integral(Poly2::constant(1.0), box, kFast).value == doctest::Approx(1.0));
  CHECK(positive_part_integral(Poly2::constant(-1.0), box, kFast).value == 0.0);
  CHECK(positive_part_integral(Poly2::monomial(1, 0), sym, kFast).value ==
        doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("decomposition |p| = max(p,0) + max(-p,0)") {
  std::mt19937_64 rng(3);
  auto coin = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const auto K = unit_box_set(-1, 1, -1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Poly2::Term> terms;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) terms.push_back({{i, j}, coin()});
    const Poly2 p(terms);
    const double l1 = l1_norm(p, K, kFast).value;
    const double split = positive_part_integral(p, K, kFast).value +
                         positive_part_integral(-p, K, kFast).value;
    CHECK(l1 == doctest::Approx(split).epsilon(2e-7));
  }
}

TEST_CASE("linearity of the integral on random polynomial pairs") {
  std::mt19937_64 rng(5);
  auto coin = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  const auto disk = unit_disk_set();
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Poly2::Term> ta, tb;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        ta.push_back({{i, j}, coin()});
        tb.push_back({{i, j}, coin()});
      }
    const Poly2 a(ta), b(tb), sum = a + b;
    const auto fa = integrate_region(RealField([&](double x, double y) { return a.eval(x, y); }), disk, kFast);
    const auto fb = integrate_region(RealField([&](double x, double y) { return b.eval(x, y); }), disk, kFast);
    const auto fs = integrate_region(RealField([&](double x, double y) { return sum.eval(x, y); }), disk, kFast);
    CHECK(fs.value == doctest::Approx(fa.value + fb.value).epsilon(1e-10));
  }
}

TEST_CASE("refinement never worsens the pinned discrepancies") {
  const auto disk = unit_disk_set();
  auto area_error = [&](int depth, int order) {
    const auto r = integrate_region(RealField([](double, double) { return 1.0; }), disk,
                                    QuadratureConfig{1e-9, depth, order});
    return std::abs(r.value - std::numbers::pi);
  };
  const double base = area_error(10, 8);
  CHECK(area_error(11, 8) <= base + 1e-13);
  CHECK(area_error(10, 16) <= base + 1e-13);
}

TEST_CASE("determinism: identical runs produce identical bits") {
  const auto disk = unit_disk_set();
  const auto f = RealField([](double x, double y) { return std::exp(x) * std::cos(y); });
  const auto a = integrate_region(f, disk, kFast);
  const auto b = integrate_region(f, disk, kFast);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.cells_used == b.cells_used);
}

TEST_CASE("error estimate reflects the self-convergence gap") {
  const auto disk = unit_disk_set();
  const auto r = integrate_region(RealField([](double, double) { return 1.0; }), disk,
                                  QuadratureConfig{1e-12, 8, 4});
  CHECK(r.error_estimate > 0.0);
  // Conservative: the true error should be within a small factor of it.
  CHECK(std::abs(r.value - std::numbers::pi) < 50.0 * r.error_estimate);
}

TEST_CASE("region_distance is a conservative lower bound") {
  const auto disk = unit_disk_set();
  CHECK(region_distance(disk, 2.0, 0.0) <= 1.0);
  CHECK(region_distance(disk, 2.0, 0.0) > 0.9);
  CHECK(region_distance(disk, 0.0, 0.0) == 0.0);
  SemiAlgebraicSet empty{{-1, 1, -1, 1}, {Poly2::constant(-1.0)}};
  CHECK(std::isinf(region_distance(empty, 5.0, 5.0)));
}
