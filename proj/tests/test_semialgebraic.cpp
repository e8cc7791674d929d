#include <doctest.h>

#include <random>

#include "expmom/multiindex.hpp"
#include "expmom/poly2.hpp"
#include "expmom/semialgebraic.hpp"

using namespace expmom;

namespace {

Poly2 unit_disk_poly() {
  // 1 - x^2 - y^2
  return Poly2({{{0, 0}, 1.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}});
}

}  // namespace

TEST_CASE("moment_dimension matches the closed form and the enumeration") {
  CHECK(moment_dimension(0) == 1);
  CHECK(moment_dimension(1) == 3);
  CHECK(moment_dimension(2) == 6);
  CHECK_THROWS_AS(moment_dimension(-1), std::invalid_argument);
  for (int n = 0; n <= 9; ++n)
    CHECK(static_cast<int>(multi_indices(n).size()) == moment_dimension(n));
}

TEST_CASE("graded-lex enumeration and positions agree") {
  const auto idx = multi_indices(2);
  REQUIRE(idx.size() == 6);
  CHECK(idx[0] == MultiIndex{0, 0});
  CHECK(idx[1] == MultiIndex{1, 0});
  CHECK(idx[2] == MultiIndex{0, 1});
  CHECK(idx[3] == MultiIndex{2, 0});
  CHECK(idx[4] == MultiIndex{1, 1});
  CHECK(idx[5] == MultiIndex{0, 2});
  for (std::size_t k = 0; k < idx.size(); ++k)
    CHECK(multi_index_position(idx[k]) == static_cast<int>(k));
}

TEST_CASE("eval_poly on the pinned instances") {
  CHECK(Poly2::monomial(1, 0).eval(2.0, 5.0) == 2.0);
  CHECK(Poly2().eval(3.0, -7.0) == 0.0);
  CHECK(unit_disk_poly().eval(0.6, 0.8) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("eval_poly is linear in the coefficients") {
  std::mt19937_64 rng(7);
  auto coin = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Poly2::Term> ta, tb;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        ta.push_back({{i, j}, coin()});
        tb.push_back({{i, j}, coin()});
      }
    const Poly2 a(ta), b(tb), sum = a + b;
    const double x = 2.0 * coin(), y = 2.0 * coin();
    CHECK(sum.eval(x, y) == doctest::Approx(a.eval(x, y) + b.eval(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("contains on the pinned instances") {
  CHECK(unit_box_set(0, 1, 0, 1).contains(0.5, 0.5));

  SemiAlgebraicSet half{{-1, 1, -1, 1}, {Poly2::monomial(1, 0)}};
  CHECK_FALSE(half.contains(-0.5, 0.0));
  CHECK(half.contains(0.5, 0.0));
  CHECK_FALSE(half.contains(0.0, 0.0));  // boundary point counts as outside

  SemiAlgebraicSet disk{{-1, 1, -1, 1}, {unit_disk_poly()}};
  CHECK_FALSE(disk.contains(0.9, 0.9));
  CHECK(disk.contains(0.3, 0.3));
}

TEST_CASE("contains is stable under appending a trivial constraint") {
  SemiAlgebraicSet disk{{-1, 1, -1, 1}, {unit_disk_poly()}};
  SemiAlgebraicSet padded = disk;
  padded.constraints.push_back(Poly2::constant(1.0));
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    const double y = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    CHECK(disk.contains(x, y) == padded.contains(x, y));
  }
}

TEST_CASE("degenerate boxes are rejected") {
  CHECK_THROWS_AS(unit_box_set(0, 0, 0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(unit_box_set(1, 0, 0, 1).validate(), std::invalid_argument);
}

TEST_CASE("poly algebra: compose_affine shifts the disk") {
  const Poly2 disk = unit_disk_poly();
  // Pullback through u -> u - (1 + 2i): membership of the shifted disk.
  const Poly2 shifted = disk.compose_affine(1, 0, -1.0, 0, 1, -2.0);
  CHECK(shifted.eval(1.0, 2.0) == doctest::Approx(1.0));   // center maps to center
  CHECK(shifted.eval(2.0, 2.0) == doctest::Approx(0.0));   // boundary point
  CHECK(shifted.eval(0.0, 0.0) == doctest::Approx(-4.0));  // far point
}

TEST_CASE("inversion pullback preserves the sign through 1/z") {
  // Annulus-like constraint bounded away from the origin.
  const Poly2 p({{{0, 0}, -1.0}, {{1, 0}, 1.0}});  // x - 1
  const Poly2 q = p.inversion_pullback();
  // Point u with 1/u = (2, 0): u = (0.5, 0).
  CHECK(q.eval(0.5, 0.0) > 0.0);
  // 1/u = (0.5, 0) -> u = (2, 0): p(0.5,0) < 0.
  CHECK(q.eval(2.0, 0.0) < 0.0);
}

TEST_CASE("set transforms: translate, scale, invert act on membership") {
  SemiAlgebraicSet disk{{-1, 1, -1, 1}, {unit_disk_poly()}};
  const auto shifted = translate_set(disk, {3.0, 1.0});
  CHECK(shifted.contains(3.0, 1.0));
  CHECK_FALSE(shifted.contains(0.0, 0.0));

  const auto doubled = scale_set(disk, {2.0, 0.0});
  CHECK(doubled.contains(1.5, 0.0));
  CHECK_FALSE(doubled.contains(2.5, 0.0));

  const auto rotated = scale_set(disk, {0.0, 1.0});  // rotation by i
  CHECK(rotated.contains(0.5, 0.5));
  CHECK_FALSE(rotated.contains(1.2, 0.0));

  // Disk of radius 1 centered at 3: inversion is a disk-like blob around 1/3.
  SemiAlgebraicSet off{{2, 4, -1, 1},
                       {Poly2({{{0, 0}, -8.0}, {{1, 0}, 6.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}})}};
  REQUIRE(off.contains(3.0, 0.0));
  const auto inverted = invert_set(off, 2.0);
  CHECK(inverted.contains(1.0 / 3.0, 0.0));
  CHECK(inverted.contains(0.25 + 1e-6, 0.0));   // image of z = 4 - eps
  CHECK_FALSE(inverted.contains(0.2, 0.0));     // image of z = 5
  CHECK_FALSE(inverted.contains(0.6, 0.0));     // image of z < 2
}
