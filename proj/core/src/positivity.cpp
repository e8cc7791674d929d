#include "expmom/positivity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "expmom/richardson.hpp"

namespace expmom {

namespace {

// Inner product linear in x and antilinear in y (Eigen's dot conjugates the
// first argument, so the slots are swapped here).
Complex ip(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) { return y.dot(x); }

using PointKey = std::array<double, 4>;

PointKey key_of(Complex a, Complex b) { return {a.real(), a.imag(), b.real(), b.imag()}; }

Complex four_point_direct(const KernelFn& E, Complex z1, Complex z2, Complex w1, Complex w2) {
  const Complex ezw = E(z1, w2);
  if (std::abs(ezw) < 1e-12)
    throw std::domain_error("four_point_kernel: pole, E(z1, conj(w2)) vanishes");
  const Complex num = ezw * E(w1, z2) - E(z1, z2) * E(w1, w2);
  return num / ((w1 - z1) * std::conj(w2 - z2) * ezw);
}

constexpr double kDiagonalTol = 1e-5;

}  // namespace

KernelFn memoize_kernel(KernelFn inner) {
  auto cache = std::make_shared<std::map<PointKey, Complex>>();
  return [inner = std::move(inner), cache](Complex z, Complex w) {
    const PointKey key = key_of(z, w);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    const Complex value = inner(z, w);
    cache->emplace(key, value);
    return value;
  };
}

void FourPointSampler::validate() const {
  if (!kernel) throw std::invalid_argument("FourPointSampler: kernel is empty");
  for (const PointPair& p : points)
    if (!(std::abs(p.s) > 1.0) || !(std::abs(p.t) > 1.0))
      throw std::invalid_argument("FourPointSampler: points must lie outside the closed unit disk");
}

std::vector<PointPair> default_sample_pairs(int count) {
  if (count < 1) throw std::invalid_argument("default_sample_pairs: count must be >= 1");
  std::vector<PointPair> pairs(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double a = 6.283185307179586 * k / count;
    pairs[static_cast<std::size_t>(k)] = {std::polar(1.5, a + 0.35), std::polar(2.5, a + 1.10)};
  }
  return pairs;
}

Complex four_point_kernel(const KernelFn& E, Complex z1, Complex z2, Complex w1, Complex w2) {
  const bool d1 = std::abs(w1 - z1) < kDiagonalTol * std::max(1.0, std::abs(z1));
  const bool d2 = std::abs(w2 - z2) < kDiagonalTol * std::max(1.0, std::abs(z2));
  if (!d1 && !d2) return four_point_direct(E, z1, z2, w1, w2);

  // Removable divided-difference diagonals: symmetric stencil plus one
  // extrapolation level. The double diagonal uses a wider step because both
  // difference quotients amplify rounding.
  const double h1 = (d1 && d2 ? 2e-3 : 1e-4) * std::max(1.0, std::abs(z1));
  const double h2 = (d1 && d2 ? 2e-3 : 1e-4) * std::max(1.0, std::abs(z2));
  auto sample = [&](double scale) {
    if (d1 && d2) {
      const double a = scale * h1, b = scale * h2;
      return 0.25 * (four_point_direct(E, z1, z2, z1 + a, z2 + b) +
                     four_point_direct(E, z1, z2, z1 + a, z2 - b) +
                     four_point_direct(E, z1, z2, z1 - a, z2 + b) +
                     four_point_direct(E, z1, z2, z1 - a, z2 - b));
    }
    if (d1) {
      const double a = scale * h1;
      return 0.5 * (four_point_direct(E, z1, z2, z1 + a, w2) +
                    four_point_direct(E, z1, z2, z1 - a, w2));
    }
    const double b = scale * h2;
    return 0.5 * (four_point_direct(E, z1, z2, w1, z2 + b) +
                  four_point_direct(E, z1, z2, w1, z2 - b));
  };
  const Complex coarse = sample(1.0), fine = sample(0.5);
  return (4.0 * fine - coarse) / 3.0;
}

namespace {

enum class InvertedScale { printed, normalized };

constexpr double kZeroFloor = 1e-7;

// Kernel in inverted coordinates. "printed" multiplies F by u1 conj(v2);
// "normalized" divides instead, which removes the first-order zeros of F at
// infinity and is the scale on which the two-sided positivity bound lives.
Complex inverted_eval(const KernelFn& E, std::array<Complex, 4> u, InvertedScale scale,
                      double ladder_eps = 1e-2, int ladder = 6) {
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(u[k]) >= kZeroFloor) continue;
    // Vanishing coordinate: extrapolate along a real ladder.
    const std::vector<double> steps = geometric_ladder(ladder_eps, ladder);
    std::vector<Complex> values;
    values.reserve(steps.size());
    for (double s : steps) {
      std::array<Complex, 4> shifted = u;
      shifted[k] = Complex(s, 0.0);
      values.push_back(inverted_eval(E, shifted, scale, ladder_eps, ladder));
    }
    return extrapolate_to_zero(steps, std::move(values));
  }
  const Complex F = four_point_kernel(E, 1.0 / u[0], 1.0 / u[1], 1.0 / u[2], 1.0 / u[3]);
  const Complex factor = u[0] * std::conj(u[3]);
  return scale == InvertedScale::printed ? F * factor : F / factor;
}

PsdReport psd_of_matrix(const Eigen::MatrixXcd& A, double tol) {
  PsdReport report;
  report.max_asymmetry = (A - A.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
  report.lambda_min = solver.eigenvalues().minCoeff();
  report.is_psd = report.lambda_min >= -tol;
  return report;
}

}  // namespace

Complex inverted_four_point(const KernelFn& E, Complex u1, Complex u2, Complex v1, Complex v2) {
  return inverted_eval(E, {u1, u2, v1, v2}, InvertedScale::printed);
}

GramMatrix build_gram(const FourPointSampler& sampler) {
  sampler.validate();
  const std::size_t n = sampler.points.size();
  GramMatrix gram;
  gram.points = sampler.points;
  gram.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l)
      gram.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) =
          four_point_kernel(sampler.kernel, sampler.points[k].s, sampler.points[k].t,
                            sampler.points[l].t, sampler.points[l].s);
  return gram;
}

PsdReport psd_gram_check(const GramMatrix& gram, double tol) {
  if (gram.entries.rows() != gram.entries.cols())
    throw std::invalid_argument("psd_gram_check: matrix must be square");
  const double scale = std::max(1.0, gram.entries.cwiseAbs().maxCoeff());
  PsdReport report = psd_of_matrix(gram.entries, tol);
  if (report.max_asymmetry > std::max(tol, 1e-9) * scale)
    throw std::invalid_argument("psd_gram_check: matrix asymmetry " +
                                std::to_string(report.max_asymmetry) + " beyond tolerance");
  return report;
}

SandwichReport sandwich_check(const FourPointSampler& sampler, double tol) {
  sampler.validate();
  const std::size_t n = sampler.points.size();
  if (n == 0) throw std::invalid_argument("sandwich_check: empty point list");
  Eigen::MatrixXcd lower(n, n), upper(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex u1 = 1.0 / sampler.points[k].s, u2 = 1.0 / sampler.points[k].t;
    for (std::size_t l = 0; l < n; ++l) {
      const Complex v1 = 1.0 / sampler.points[l].t, v2 = 1.0 / sampler.points[l].s;
      const Complex g11 = inverted_eval(sampler.kernel, {u1, u2, v1, v2}, InvertedScale::normalized);
      const Complex g01 = inverted_eval(sampler.kernel, {0.0, u2, v1, v2}, InvertedScale::normalized);
      const Complex g10 = inverted_eval(sampler.kernel, {u1, u2, v1, 0.0}, InvertedScale::normalized);
      const Complex g00 = inverted_eval(sampler.kernel, {0.0, u2, v1, 0.0}, InvertedScale::normalized);
      // Mixed difference at zero in u1 and conj(v2).
      const Complex dd = (g11 - g01 - g10 + g00) / (u1 * std::conj(v2));
      lower(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = dd;
      upper(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = g11 - dd;
    }
  }
  const PsdReport lo = psd_of_matrix(lower, tol);
  const PsdReport hi = psd_of_matrix(upper, tol);
  return {lo.is_psd, hi.is_psd, lo.lambda_min, hi.lambda_min};
}

RhoFactor kolmogorov_factorize(const GramMatrix& gram, double tol, double rank_eps) {
  const Eigen::Index n = gram.entries.rows();
  if (n != gram.entries.cols())
    throw std::invalid_argument("kolmogorov_factorize: matrix must be square");
  const Eigen::MatrixXcd H = 0.5 * (gram.entries + gram.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  const Eigen::VectorXd lambda = solver.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -tol)
    throw std::invalid_argument("kolmogorov_factorize: matrix indefinite beyond tolerance (" +
                                std::to_string(lambda.minCoeff()) + ")");
  const double lambda_max = std::max(lambda.size() > 0 ? lambda.maxCoeff() : 0.0, 0.0);
  std::vector<Eigen::Index> kept;
  for (Eigen::Index r = 0; r < lambda.size(); ++r)
    if (lambda[r] > rank_eps * lambda_max && lambda[r] > 0.0) kept.push_back(r);

  RhoFactor factor;
  factor.vectors.resize(static_cast<Eigen::Index>(kept.size()), n);
  for (std::size_t r = 0; r < kept.size(); ++r)
    factor.vectors.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(lambda[kept[r]]) * solver.eigenvectors().col(kept[r]).transpose();
  const Eigen::MatrixXcd rebuilt =
      (factor.vectors.adjoint() * factor.vectors).transpose();
  factor.reconstruction_error = (rebuilt - gram.entries).cwiseAbs().maxCoeff();
  return factor;
}

OperatorReconstruction reconstruct_operator(const FourPointSampler& sampler,
                                            const OperatorConfig& cfg) {
  sampler.validate();
  if (sampler.points.empty()) throw std::invalid_argument("reconstruct_operator: no sample pairs");
  const std::vector<double> steps = geometric_ladder(cfg.eps, cfg.ladder);
  std::vector<Complex> far;
  far.reserve(steps.size());
  for (double s : steps) far.emplace_back(1.0 / s, 0.0);

  // Augmented sample list: base pairs plus companions that carry every
  // infinity limit the construction needs.
  std::vector<PointPair> aug;
  std::map<PointKey, int> index;
  auto add = [&](Complex a, Complex b) {
    const PointKey key = key_of(a, b);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(aug.size());
    aug.push_back({a, b});
    index.emplace(key, id);
    return id;
  };
  std::vector<int> base;
  base.reserve(sampler.points.size());
  for (const PointPair& p : sampler.points) base.push_back(add(p.s, p.t));
  for (const PointPair& p : sampler.points)
    for (Complex f : far) {
      add(f, p.t);
      add(p.s, f);
    }
  for (Complex fa : far)
    for (Complex fb : far) add(fa, fb);

  FourPointSampler augmented{sampler.kernel, aug};
  const GramMatrix gram = build_gram(augmented);
  const RhoFactor factor = kolmogorov_factorize(gram, cfg.psd_tol, cfg.rank_eps);
  const Eigen::MatrixXcd& R = factor.vectors;
  const Eigen::Index naug = R.cols();

  auto column = [&](Complex a, Complex b) -> Eigen::VectorXcd {
    return R.col(index.at(key_of(a, b)));
  };
  // lim_{z -> inf} z rho(z, conj(b)) along the ladder.
  auto shift_limit = [&](Complex b) {
    std::vector<Eigen::VectorXcd> values;
    values.reserve(steps.size());
    for (std::size_t j = 0; j < steps.size(); ++j) values.push_back(far[j] * column(far[j], b));
    return extrapolate_to_zero(steps, std::move(values));
  };
  // lim_{z -> inf} conj(z) rho(a, conj(z)) along the ladder.
  auto adjoint_limit = [&](Complex a) {
    std::vector<Eigen::VectorXcd> values;
    values.reserve(steps.size());
    for (std::size_t j = 0; j < steps.size(); ++j)
      values.push_back(std::conj(far[j]) * column(a, far[j]));
    return extrapolate_to_zero(steps, std::move(values));
  };

  std::map<PointKey, Eigen::VectorXcd> shift_limits;
  for (const PointPair& p : aug) {
    const PointKey key = key_of(p.t, 0.0);
    if (!shift_limits.count(key)) shift_limits.emplace(key, shift_limit(p.t));
  }

  // xi = lim z1 conj(z2) rho(z1, conj(z2)) at the double infinity.
  std::vector<Eigen::VectorXcd> diag_values;
  diag_values.reserve(steps.size());
  for (std::size_t j = 0; j < steps.size(); ++j)
    diag_values.push_back(far[j] * std::conj(far[j]) * column(far[j], far[j]));
  const Eigen::VectorXcd xi_full = extrapolate_to_zero(steps, std::move(diag_values));

  // Shift action on every realized sample: T rho(z1, .) = z1 rho - limit.
  Eigen::MatrixXcd targets(R.rows(), naug);
  for (Eigen::Index q = 0; q < naug; ++q) {
    const PointPair& p = aug[static_cast<std::size_t>(q)];
    targets.col(q) = p.s * R.col(q) - shift_limits.at(key_of(p.t, 0.0));
  }

  // Truncated least squares on the span; the weakest directions carry only
  // factorization noise and would otherwise dominate the fit.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[0] <= 0.0)
    throw std::runtime_error("reconstruct_operator: degenerate sample span");
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma[rank] >= cfg.fit_sigma_rel * sigma[0]) ++rank;
  if (rank == 0) throw std::runtime_error("reconstruct_operator: empty fitted span");
  const double condition = sigma[0] / sigma[rank - 1];
  if (condition > cfg.cond_limit)
    throw std::runtime_error("reconstruct_operator: sample span condition " +
                             std::to_string(condition) + " beyond limit");

  const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXcd V = svd.matrixV().leftCols(rank);
  const Eigen::VectorXd s_inv = sigma.head(rank).cwiseInverse();

  // Everything restricted to the fitted span.
  const Eigen::MatrixXcd T = U.adjoint() * targets * V * s_inv.asDiagonal();
  const Eigen::MatrixXcd rho = U.adjoint() * R;
  const Eigen::VectorXcd xi = U.adjoint() * xi_full;

  OperatorReconstruction out;
  out.op = {T, xi};
  out.rho.resize(rank, static_cast<Eigen::Index>(base.size()));
  for (std::size_t k = 0; k < base.size(); ++k)
    out.rho.col(static_cast<Eigen::Index>(k)) = rho.col(base[k]);

  OperatorDiagnostics diag;
  diag.span_dimension = static_cast<int>(rank);
  diag.condition = condition;
  diag.factor_error = factor.reconstruction_error;
  for (Eigen::Index q = 0; q < naug; ++q)
    diag.fit_residual = std::max(diag.fit_residual,
                                 (T * rho.col(q) - U.adjoint() * targets.col(q)).norm());
  for (std::size_t k = 0; k < base.size(); ++k) {
    const PointPair& p = sampler.points[k];
    const Eigen::VectorXcd rk = rho.col(static_cast<Eigen::Index>(base[k]));
    const Complex e = sampler.kernel(p.s, p.t);
    const Eigen::VectorXcd expected =
        std::conj(p.t) * rk - e * (U.adjoint() * adjoint_limit(p.s)).eval();
    diag.adjoint_residual = std::max(diag.adjoint_residual, (T.adjoint() * rk - expected).norm());
    diag.link_residual = std::max(diag.link_residual, std::abs(ip(rk, xi) - (1.0 - e)));
  }
  out.diagnostics = diag;
  return out;
}

namespace {

Eigen::VectorXcd resolve(const Eigen::MatrixXcd& M, Complex shift, const Eigen::VectorXcd& rhs) {
  const Eigen::MatrixXcd A =
      M - shift * Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  const Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(rhs);
  if (!((A * x - rhs).norm() <= 1e-8 * std::max(1.0, rhs.norm())))
    throw std::runtime_error("verify_determinantal_identity: singular resolvent solve");
  return x;
}

}  // namespace

DeterminantalReport verify_determinantal_identity(const FiniteOperator& op, const KernelFn& E,
                                                  const std::vector<PointPair>& holdout,
                                                  double tol) {
  (void)tol;
  if (holdout.empty())
    throw std::invalid_argument("verify_determinantal_identity: empty holdout list");
  for (const PointPair& p : holdout)
    if (!(std::abs(p.s) > 1.0) || !(std::abs(p.t) > 1.0))
      throw std::invalid_argument("verify_determinantal_identity: holdout points must lie outside the closed unit disk");

  const Eigen::MatrixXcd Tadj = op.T.adjoint();
  DeterminantalReport report;
  auto rho_hat = [&](Complex z1, Complex z2) {
    return resolve(op.T, z1, resolve(Tadj, std::conj(z2), op.xi)).eval();
  };

  for (const PointPair& p : holdout) {
    const Complex e = E(p.s, p.t);
    const Eigen::VectorXcd rz = resolve(Tadj, std::conj(p.s), op.xi);
    const Eigen::VectorXcd rw = resolve(Tadj, std::conj(p.t), op.xi);
    report.resolvent_residual =
        std::max(report.resolvent_residual, std::abs(1.0 - ip(rw, rz) - e));

    // Reciprocal identity with u = t, v = s.
    const Eigen::VectorXcd chain = resolve(Tadj, std::conj(p.t), resolve(op.T, p.s, op.xi));
    report.reciprocal_residual =
        std::max(report.reciprocal_residual, std::abs(1.0 + ip(chain, op.xi) - 1.0 / e));
  }
  for (std::size_t k = 0; k < holdout.size(); ++k) {
    const PointPair& a = holdout[k];
    const PointPair& b = holdout[(k + 1) % holdout.size()];
    const Complex f = four_point_kernel(E, a.s, a.t, b.s, b.t);
    const Complex f_hat = ip(rho_hat(a.s, a.t), rho_hat(b.t, b.s));
    report.rho_residual = std::max(report.rho_residual, std::abs(f_hat - f));
  }
  report.max_residual = std::max({report.resolvent_residual, report.reciprocal_residual,
                                  report.rho_residual});
  return report;
}

namespace {

// Finite-difference weights for the derivatives 0..m at x = 0 on arbitrary
// nodes (Fornberg's recurrence). Column d holds the weights of f^(d)(0).
Eigen::MatrixXd fd_weights(const std::vector<double>& nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0;
  double c4 = nodes[0];
  w(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          w(i, k) = c1 * (k * w(i - 1, k - 1) - c5 * w(i - 1, k)) / c2;
        w(i, 0) = -c1 * c5 * w(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k)
        w(j, k) = (c4 * w(j, k) - k * w(j, k - 1)) / c3;
      w(j, 0) = c4 * w(j, 0) / c3;
    }
    c1 = c2;
  }
  return w;
}

Eigen::MatrixXcd derivative_table(const KernelFn& E, int order, double step, int pad) {
  const int half = order + pad;
  std::vector<double> nodes;
  nodes.reserve(static_cast<std::size_t>(2 * half));
  for (int k = -half; k < half; ++k) nodes.push_back((k + 0.5) * step);
  if (std::abs(nodes.back() * (1.0 / step)) * step >= 1.0)
    throw std::invalid_argument("interpolation_data: stencil leaves the unit disk");

  const Eigen::MatrixXd W = fd_weights(nodes, order);
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXcd values(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double u1 = nodes[static_cast<std::size_t>(a)], u2 = nodes[static_cast<std::size_t>(b)];
      values(a, b) = (1.0 - E(1.0 / u1, 1.0 / u2)) / (u1 * u2);
    }

  Eigen::MatrixXcd table(order + 1, order + 1);
  for (int m = 0; m <= order; ++m)
    for (int nn = 0; nn <= order; ++nn)
      table(m, nn) = (W.col(m).transpose() * values * W.col(nn))(0, 0);
  return table;
}

}  // namespace

InterpolationData interpolation_data(const KernelFn& E, int order, const InterpolationConfig& cfg) {
  if (order < 0) throw std::invalid_argument("interpolation_data: order must be non-negative");
  if (!(cfg.step > 0.0) || cfg.stencil_pad < 1)
    throw std::invalid_argument("interpolation_data: bad configuration");

  const Eigen::MatrixXcd coarse = derivative_table(E, order, cfg.step, cfg.stencil_pad);
  const Eigen::MatrixXcd fine = derivative_table(E, order, 0.5 * cfg.step, cfg.stencil_pad);

  InterpolationData data;
  data.order = order;
  const auto indices = multi_indices(order);
  data.values.resize(static_cast<Eigen::Index>(indices.size()));
  data.instability.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    data.values[static_cast<Eigen::Index>(k)] = fine(indices[k].i, indices[k].j);
    data.instability[static_cast<Eigen::Index>(k)] =
        std::abs(fine(indices[k].i, indices[k].j) - coarse(indices[k].i, indices[k].j));
  }
  return data;
}

}  // namespace expmom
