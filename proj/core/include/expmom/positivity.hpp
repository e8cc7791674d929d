#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "expmom/multiindex.hpp"

namespace expmom {

using Complex = std::complex<double>;

// Kernel evaluator: E(z, conj(w)), analytic in z and anti-analytic in w,
// defined for points outside the closed unit disk and normalized to 1 at
// infinity. Closed forms, numeric quadrature kernels and test fakes all fit
// behind this signature.
using KernelFn = std::function<Complex(Complex, Complex)>;

// Memoizing wrapper keyed on the exact bit patterns of (z, w); worthwhile
// when E is backed by quadrature.
KernelFn memoize_kernel(KernelFn inner);

struct PointPair {
  Complex s, t;
};

// A kernel together with the sample pairs it will be probed on; every
// coordinate must lie outside the closed unit disk.
struct FourPointSampler {
  KernelFn kernel;
  std::vector<PointPair> points;

  void validate() const;
};

// Default sample placement: pairs on the circles of radius 1.5 and 2.5 at
// equispaced, interleaved angles.
std::vector<PointPair> default_sample_pairs(int count);

// Four-point kernel of E:
//   F(z1, conj(z2); w1, conj(w2)) =
//     [E(z1,w2) E(w1,z2) - E(z1,z2) E(w1,w2)]
//     / [(w1 - z1) conj(w2 - z2) E(z1,w2)].
// The divided differences are removable on the diagonals w1 = z1, w2 = z2 and
// are evaluated there by central differences with one extrapolation level.
// A vanishing E(z1, conj(w2)) is reported as a pole (std::domain_error).
Complex four_point_kernel(const KernelFn& E, Complex z1, Complex z2, Complex w1, Complex w2);

// The four-point kernel carried to inverted coordinates u_j = 1/z_j,
// v_j = 1/w_j on the unit polydisk:
//   G(u1, conj(u2); v1, conj(v2)) = F(1/u1, ...; 1/v1, ...) * u1 * conj(v2),
// with vanishing coordinates resolved by extrapolation along a ladder.
Complex inverted_four_point(const KernelFn& E, Complex u1, Complex u2, Complex v1, Complex v2);

struct GramMatrix {
  Eigen::MatrixXcd entries;  // entries(k,l) = F(s_k, conj(t_k); t_l, conj(s_l))
  std::vector<PointPair> points;
};

GramMatrix build_gram(const FourPointSampler& sampler);

struct PsdReport {
  bool is_psd = false;
  double lambda_min = 0.0;
  double max_asymmetry = 0.0;
};

// Spectrum test of a Hermitian sample matrix; rejects (std::invalid_argument)
// matrices whose asymmetry exceeds the tolerance.
PsdReport psd_gram_check(const GramMatrix& gram, double tol);

struct SandwichReport {
  bool lower_psd = false;  // second-order difference at infinity
  bool upper_psd = false;  // kernel minus that difference
  double lower_lambda_min = 0.0;
  double upper_lambda_min = 0.0;
};

// Two-sided positivity of the kernel in inverted coordinates: both the
// mixed difference-at-zero of the normalized kernel and its complement must
// be non-negatively definite. This is the membership test for kernels of
// densities with values in [0,1].
SandwichReport sandwich_check(const FourPointSampler& sampler, double tol);

struct RhoFactor {
  Eigen::MatrixXcd vectors;  // column k realizes sample k in C^m
  double reconstruction_error = 0.0;
};

// Kolmogorov factorization of a non-negative sample matrix by spectral
// truncation: A ~= R^* -style Gram of the returned columns. Eigenvalues in
// [-tol, 0) clamp to zero; matrices indefinite beyond tol are rejected.
// rank_eps discards eigenvalues below rank_eps * lambda_max.
RhoFactor kolmogorov_factorize(const GramMatrix& gram, double tol, double rank_eps = 1e-12);

struct FiniteOperator {
  Eigen::MatrixXcd T;     // m x m contraction
  Eigen::VectorXcd xi;    // self-commutator direction
};

struct OperatorConfig {
  double eps = 1e-2;          // base step of the infinity ladders
  int ladder = 6;             // ladder length (eps, eps/2, ..., eps/2^(l-1))
  double rank_eps = 1e-12;    // factorization rank cut
  double fit_sigma_rel = 1e-5;  // singular-value cut of the least-squares fit
  double cond_limit = 1e13;   // reject spans beyond this condition number
  double psd_tol = 1e-8;
};

struct OperatorDiagnostics {
  int span_dimension = 0;
  double condition = 0.0;        // sigma_max / sigma_cut of the sample span
  double fit_residual = 0.0;     // shift relation on the span
  double adjoint_residual = 0.0; // adjoint shift relation on the base pairs
  double link_residual = 0.0;    // <rho, xi> against 1 - E on the base pairs
  double factor_error = 0.0;     // Gram reconstruction error of the factorization
};

struct OperatorReconstruction {
  FiniteOperator op;
  // Sample realizations in the operator's space, one column per base pair.
  Eigen::MatrixXcd rho;
  OperatorDiagnostics diagnostics;
};

// Realizes the finite operator model behind a kernel: factorizes the Gram
// matrix of the samples augmented with companion points near infinity,
// extracts the shift action and the commutator direction from the ladder
// limits, and fits the operator by truncated least squares on the span.
OperatorReconstruction reconstruct_operator(const FourPointSampler& sampler,
                                            const OperatorConfig& cfg = {});

struct DeterminantalReport {
  double max_residual = 0.0;
  double resolvent_residual = 0.0;   // 1 - <(T*-w)^-1 xi, (T*-z)^-1 xi> against E
  double reciprocal_residual = 0.0;  // 1 + <(T*-u)^-1 (T-v)^-1 xi, xi> against 1/E
  double rho_residual = 0.0;         // resolvent realization against the four-point kernel
};

// Checks the determinantal identity and its resolvent companions on holdout
// points by direct linear solves; a singular solve is reported as an error
// (cannot occur for points outside the operator's numerical range).
DeterminantalReport verify_determinantal_identity(const FiniteOperator& op, const KernelFn& E,
                                                  const std::vector<PointPair>& holdout,
                                                  double tol);

struct InterpolationData {
  int order = 0;
  Eigen::VectorXcd values;       // b_mn in graded-lex order over (m, n)
  Eigen::VectorXd instability;   // stepwise disagreement per entry
};

struct InterpolationConfig {
  double step = 0.04;   // base finite-difference step in the inverted variables
  int stencil_pad = 3;  // stencil half-width beyond the derivative order
};

// Taylor data of the kernel at infinity: mixed derivatives at zero of
//   g(u1, u2) = (1 - E(1/u1, 1/u2)) / (u1 conj(u2)),
// taken in u1 and conj(u2), for all orders m + n <= order. g(0,0) is the
// normalized area of the underlying region; the data feed the two-variable
// Caratheodory-Fejer interpolation problem.
InterpolationData interpolation_data(const KernelFn& E, int order,
                                     const InterpolationConfig& cfg = {});

}  // namespace expmom
