// Scratch calibration harness (not part of the test suite).
#include <chrono>
#include <cstdio>
#include <numbers>

#include "expmom/kernel.hpp"
#include "expmom/quadrature.hpp"

using namespace expmom;

int main() {
  SemiAlgebraicSet disk{{-1, 1, -1, 1}, {Poly2({{{0, 0}, 1.0}, {{2, 0}, -1.0}, {{0, 2}, -1.0}})}};
  for (int depth : {10, 12, 14, 15, 16}) {
    auto t0 = std::chrono::steady_clock::now();
    const auto area = integrate_region(RealField([](double, double) { return 1.0; }), disk,
                                       QuadratureConfig{1e-10, depth, 8});
    auto t1 = std::chrono::steady_clock::now();
    KernelOptions opts;
    opts.quad = {1e-10, depth, 8};
    const auto eval = eval_exponential_kernel(disk, {2.0, 0.0}, {2.0, 0.0}, opts);
    auto t2 = std::chrono::steady_clock::now();
    const double area_err = std::abs(area.value - std::numbers::pi);
    const double kern_err = std::abs(eval.value - Complex(0.75, 0.0));
    std::printf(
        "depth %2d: area_err %.3e (est %.3e, cells %8ld, %5.0f ms) kernel_err %.3e (est %.3e, %5.0f ms)\n",
        depth, area_err, area.error_estimate, area.cells_used,
        std::chrono::duration<double, std::milli>(t1 - t0).count(), kern_err,
        eval.error_estimate, std::chrono::duration<double, std::milli>(t2 - t1).count());
  }
  return 0;
}
