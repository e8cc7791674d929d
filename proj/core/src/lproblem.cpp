#include "expmom/lproblem.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "expmom/gauss.hpp"
#include "expmom/simplex.hpp"

namespace expmom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_problem(const SemiAlgebraicSet& K, int order, const MomentVector& a) {
  K.validate();
  a.validate();
  if (a.order != order)
    throw std::invalid_argument("moment vector order disagrees with the problem order");
}

double sigmoid(double s) {
  if (s > 40.0) return 1.0;
  if (s < -40.0) return 0.0;
  return 1.0 / (1.0 + std::exp(-s));
}

// Deterministic uniform in [0,1) from the raw engine bits; the standard
// distributions are implementation-defined and would break seed stability.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::VectorXd random_unit(std::mt19937_64& rng, int dim) {
  Eigen::VectorXd v(dim);
  for (int k = 0; k < dim; ++k) {
    // Box-Muller on raw bits.
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    v[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  const double n = v.norm();
  return n > 0.0 ? Eigen::VectorXd(v / n) : Eigen::VectorXd::Unit(dim, 0);
}

// Composite tensor-Gauss rule over the box of K, masked by membership; used
// by the smoothed-indicator Gauss-Newton polish where integrands are smooth.
struct DenseRule {
  Eigen::VectorXd w;
  Eigen::MatrixXd monomials;
};

DenseRule make_dense_rule(const SemiAlgebraicSet& K, int order, int panels, int points) {
  const GaussRule& g = gauss_legendre(points);
  const auto indices = multi_indices(order);
  std::vector<double> xs, ys, ws;
  const double hx = K.box.width() / panels, hy = K.box.height() / panels;
  for (int px = 0; px < panels; ++px)
    for (int a = 0; a < points; ++a) {
      const double x = K.box.xmin + (px + 0.5 * (1.0 + g.nodes[a])) * hx;
      for (int py = 0; py < panels; ++py)
        for (int b = 0; b < points; ++b) {
          const double y = K.box.ymin + (py + 0.5 * (1.0 + g.nodes[b])) * hy;
          if (!K.contains(x, y)) continue;
          xs.push_back(x);
          ys.push_back(y);
          ws.push_back(0.25 * hx * hy * g.weights[a] * g.weights[b]);
        }
    }
  DenseRule rule;
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  rule.w = Eigen::Map<Eigen::VectorXd>(ws.data(), n);
  rule.monomials.resize(n, static_cast<Eigen::Index>(indices.size()));
  for (Eigen::Index k = 0; k < n; ++k) {
    double xp[1 + 64], yp[1 + 64];
    xp[0] = yp[0] = 1.0;
    for (int d = 1; d <= order; ++d) {
      xp[d] = xp[d - 1] * xs[static_cast<std::size_t>(k)];
      yp[d] = yp[d - 1] * ys[static_cast<std::size_t>(k)];
    }
    for (std::size_t c = 0; c < indices.size(); ++c)
      rule.monomials(k, static_cast<Eigen::Index>(c)) = xp[indices[c].i] * yp[indices[c].j];
  }
  return rule;
}

}  // namespace

void LProblemConfig::validate() const {
  if (grid < 2) throw std::invalid_argument("LProblemConfig: grid resolution must be >= 2");
  quad.validate();
}

CriticalBound critical_L(const SemiAlgebraicSet& K, int order, const MomentVector& a,
                         const LProblemConfig& cfg) {
  check_problem(K, order, a);
  cfg.validate();
  const double scale = a.entries.norm();
  if (scale == 0.0) return {0.0, std::nullopt};
  const Eigen::VectorXd ahat = a.entries / scale;

  const MidpointGrid grid = make_midpoint_grid(K, cfg.grid);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  if (n == 0) throw std::invalid_argument("critical_L: region is empty at the grid resolution");
  const int d = moment_dimension(order);
  const Eigen::MatrixXd M = grid.monomials(order);
  const Eigen::Map<const Eigen::VectorXd> w(grid.w.data(), n);

  // max mu subject to: grid moments of phi equal mu * ahat, |phi| <= 1.
  // The dual multipliers of the d moment rows are the coefficients of the
  // extremal polynomial, normalized so that l_a(p) = 1.
  LinearProgram lp;
  lp.A.resize(d, n + 1);
  lp.A.leftCols(n) = (M.array().colwise() * w.array()).matrix().transpose();
  lp.A.col(n) = -ahat;
  lp.b = Eigen::VectorXd::Zero(d);
  lp.c = Eigen::VectorXd::Zero(n + 1);
  lp.c[n] = -1.0;
  lp.lo = Eigen::VectorXd::Constant(n + 1, -1.0);
  lp.hi = Eigen::VectorXd::Constant(n + 1, 1.0);
  lp.lo[n] = -kInf;
  lp.hi[n] = kInf;

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("critical_L: discretized program did not solve");
  const double mu = sol.x[n];
  if (!(mu > 1e-14)) throw std::runtime_error("critical_L: degenerate grid moment body");

  Eigen::VectorXd coeff = sol.dual;
  const double cnorm = coeff.norm();
  if (cnorm > 0.0) coeff /= cnorm;
  return {scale / mu,
          Poly2::from_coefficients(order, std::vector<double>(coeff.data(), coeff.data() + d))};
}

double krein_margin(const SemiAlgebraicSet& K, int order, const MomentVector& a,
                    const LProblemConfig& cfg) {
  check_problem(K, order, a);
  cfg.validate();
  const MidpointGrid grid = make_midpoint_grid(K, cfg.grid);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  if (n == 0) throw std::invalid_argument("krein_margin: region is empty at the grid resolution");
  const int d = moment_dimension(order);
  const Eigen::MatrixXd M = grid.monomials(order);
  const Eigen::Map<const Eigen::VectorXd> w(grid.w.data(), n);

  const auto objective = [&](const Eigen::VectorXd& c) {
    const Eigen::ArrayXd p = (M * c).array();
    return a.entries.dot(c) - (w.array() * p.max(0.0)).sum();
  };
  const auto gradient = [&](const Eigen::VectorXd& c) {
    const Eigen::ArrayXd p = (M * c).array();
    const Eigen::ArrayXd active = (p > 0.0).cast<double>() * w.array();
    return Eigen::VectorXd(a.entries - M.transpose() * active.matrix());
  };

  std::vector<Eigen::VectorXd> starts;
  for (int k = 0; k < d; ++k) {
    starts.push_back(Eigen::VectorXd::Unit(d, k));
    starts.push_back(-Eigen::VectorXd::Unit(d, k));
  }
  std::mt19937_64 rng(cfg.seed);
  for (int k = 0; k < 32; ++k) starts.push_back(random_unit(rng, d));

  Eigen::VectorXd best = starts.front();
  double best_value = -kInf;
  for (Eigen::VectorXd c : starts) {
    double value = objective(c);
    double step = 0.5;
    for (int iter = 0; iter < 300; ++iter) {
      const Eigen::VectorXd g = gradient(c);
      const Eigen::VectorXd gt = g - g.dot(c) * c;  // tangent to the sphere
      if (gt.norm() < 1e-12) break;
      bool moved = false;
      while (step > 1e-14) {
        Eigen::VectorXd cand = c + step * gt;
        cand /= cand.norm();
        const double cand_value = objective(cand);
        if (cand_value > value + 1e-15) {
          c = cand;
          value = cand_value;
          step = std::min(step * 1.5, 1.0);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (value > best_value) {
      best_value = value;
      best = c;
    }
  }

  // Score the winning direction with adaptive quadrature.
  const Poly2 p = Poly2::from_coefficients(order, std::vector<double>(best.data(), best.data() + d));
  return a.entries.dot(best) - positive_part_integral(p, K, cfg.quad).value;
}

namespace {

// Gauss-Newton on the smoothed-indicator moment map, one sharpness stage.
// model = indicator: phi = sigma(p/eps); model = sign: phi = 2 sigma(p/eps) - 1.
void gauss_newton_stage(const DenseRule& rule, const Eigen::VectorXd& target, DensityModel model,
                        double eps, Eigen::VectorXd& c) {
  const Eigen::Index d = c.size();
  const auto residual = [&](const Eigen::VectorXd& coeffs) {
    const Eigen::ArrayXd p = (rule.monomials * coeffs).array();
    Eigen::ArrayXd phi = p.unaryExpr([eps](double s) { return sigmoid(s / eps); });
    if (model == DensityModel::sign) phi = 2.0 * phi - 1.0;
    return Eigen::VectorXd(rule.monomials.transpose() * (rule.w.array() * phi).matrix() - target);
  };

  double lambda = 1e-10;
  Eigen::VectorXd r = residual(c);
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::ArrayXd p = (rule.monomials * c).array();
    Eigen::ArrayXd sig = p.unaryExpr([eps](double s) { return sigmoid(s / eps); });
    Eigen::ArrayXd dphi = sig * (1.0 - sig) / eps;
    if (model == DensityModel::sign) dphi *= 2.0;
    const Eigen::ArrayXd row = rule.w.array() * dphi;
    const Eigen::MatrixXd J =
        rule.monomials.transpose() * (rule.monomials.array().colwise() * row).matrix();

    bool accepted = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      const Eigen::MatrixXd H = J.transpose() * J + lambda * Eigen::MatrixXd::Identity(d, d);
      const Eigen::VectorXd delta = Eigen::LDLT<Eigen::MatrixXd>(H).solve(-J.transpose() * r);
      const Eigen::VectorXd cand = c + delta;
      const Eigen::VectorXd rc = residual(cand);
      if (rc.norm() < r.norm()) {
        c = cand;
        r = rc;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted || r.norm() < 1e-14) break;
  }
}

}  // namespace

ExtremalSolution extremal_reconstruct(const SemiAlgebraicSet& K, int order,
                                      const MomentVector& a_target, const LProblemConfig& cfg,
                                      DensityModel model) {
  check_problem(K, order, a_target);
  cfg.validate();
  const int d = moment_dimension(order);

  // The critical-bound LP of the sign-normalized target supplies the seed
  // direction: boundary moment vectors are realized by sgn of its minimizer.
  const MomentVector seed_moments =
      model == DensityModel::sign ? a_target
                                  : normalize_bounds(a_target, K, 1.0, false, cfg.quad);
  const CriticalBound bound = critical_L(K, order, seed_moments, cfg);

  Eigen::VectorXd c;
  if (bound.minimizer.has_value()) {
    const auto coeffs = bound.minimizer->coefficients(order);
    c = Eigen::Map<const Eigen::VectorXd>(coeffs.data(), d);
  } else {
    std::mt19937_64 rng(cfg.seed);
    c = random_unit(rng, d);
  }

  const DenseRule rule = make_dense_rule(K, order, 64, 4);
  const Eigen::VectorXd target =
      model == DensityModel::sign ? seed_moments.entries : a_target.entries;

  // Sharpness continuation: geometric schedule from 0.5 down to 1e-3.
  const double ratio = std::pow(1e-3 / 0.5, 1.0 / 9.0);
  double eps = 0.5;
  for (int stage = 0; stage < 10; ++stage, eps *= ratio) {
    gauss_newton_stage(rule, target, model, eps, c);
    const double n = c.norm();
    if (n > 0.0) c /= n;
  }

  ExtremalSolution out;
  const double cnorm = c.norm();
  if (cnorm > 0.0) c /= cnorm;
  out.p = Poly2::from_coefficients(order, std::vector<double>(c.data(), c.data() + d));
  const MomentVector achieved = model == DensityModel::sign
                                    ? moments_of_sign(out.p, K, order, cfg.quad)
                                    : [&] {
                                        SemiAlgebraicSet region = K;
                                        region.constraints.push_back(out.p);
                                        return compute_moments(region, order, cfg.quad);
                                      }();
  out.moment_residual = (achieved.entries - a_target.entries).norm();
  out.critical_L = bound.L0;
  out.converged = out.moment_residual <= 1e-3 * std::max(1.0, a_target.entries.norm());
  return out;
}

ChebyshevBounds chebyshev_bounds(const SemiAlgebraicSet& K, int order, const MomentVector& a,
                                 const Poly2& psi, const LProblemConfig& cfg) {
  check_problem(K, order, a);
  cfg.validate();
  MidpointGrid grid = make_midpoint_grid(K, cfg.grid);
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  if (n == 0)
    throw std::invalid_argument("chebyshev_bounds: region is empty at the grid resolution");
  const Eigen::MatrixXd M = grid.monomials(order);
  const Eigen::Map<const Eigen::VectorXd> w(grid.w.data(), n);

  LinearProgram lp;
  lp.A = (M.array().colwise() * w.array()).matrix().transpose();
  lp.b = a.entries;
  lp.lo = Eigen::VectorXd::Zero(n);
  lp.hi = Eigen::VectorXd::Ones(n);
  lp.c.resize(n);
  for (Eigen::Index k = 0; k < n; ++k)
    lp.c[k] = w[k] * psi.eval(grid.x[static_cast<std::size_t>(k)], grid.y[static_cast<std::size_t>(k)]);

  const LpSolution lo = solve_lp(lp);
  if (lo.status == LpStatus::infeasible)
    throw MomentsInfeasible("chebyshev_bounds: moments not attainable at the grid resolution");
  if (lo.status != LpStatus::optimal)
    throw std::runtime_error("chebyshev_bounds: lower program did not solve");

  LinearProgram upper = lp;
  upper.c = -lp.c;
  const LpSolution hi = solve_lp(upper);
  if (hi.status != LpStatus::optimal)
    throw std::runtime_error("chebyshev_bounds: upper program did not solve");

  ChebyshevBounds out;
  out.min_value = lo.objective;
  out.max_value = -hi.objective;
  out.minimizer = {grid, lo.x};
  out.maximizer = {grid, hi.x};
  return out;
}

MomentVector normalize_bounds(const MomentVector& a, const SemiAlgebraicSet& K, double L,
                              bool inverse, const QuadratureConfig& quad) {
  a.validate();
  K.validate();
  if (!(L > 0.0)) throw std::invalid_argument("normalize_bounds: L must be positive");
  const MomentVector mK = compute_moments(K, a.order, quad);
  MomentVector out;
  out.order = a.order;
  out.entries = inverse ? Eigen::VectorXd(0.5 * (a.entries + L * mK.entries))
                        : Eigen::VectorXd(2.0 * a.entries - L * mK.entries);
  return out;
}

MomentVector moments_of_sign(const Poly2& p, const SemiAlgebraicSet& K, int order,
                             const QuadratureConfig& quad) {
  if (p.is_zero()) throw std::invalid_argument("moments_of_sign: polynomial must be nonzero");
  SemiAlgebraicSet plus = K, minus = K;
  plus.constraints.push_back(p);
  minus.constraints.push_back(-p);
  const MomentVector mp = compute_moments(plus, order, quad);
  const MomentVector mm = compute_moments(minus, order, quad);
  return {order, mp.entries - mm.entries};
}

std::vector<std::pair<std::complex<double>, std::complex<double>>> zero_set_segments(
    const Poly2& p, const SemiAlgebraicSet& K, int resolution) {
  K.validate();
  if (resolution < 2) throw std::invalid_argument("zero_set_segments: resolution must be >= 2");
  using C = std::complex<double>;
  std::vector<std::pair<C, C>> segments;
  const double hx = K.box.width() / resolution, hy = K.box.height() / resolution;
  const auto cross = [&p](double xa, double ya, double xb, double yb) {
    const double fa = p.eval(xa, ya), fb = p.eval(xb, yb);
    const double t = fa / (fa - fb);
    return C(xa + t * (xb - xa), ya + t * (yb - ya));
  };
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const double x0 = K.box.xmin + i * hx, x1 = x0 + hx;
      const double y0 = K.box.ymin + j * hy, y1 = y0 + hy;
      const double f00 = p.eval(x0, y0), f10 = p.eval(x1, y0);
      const double f01 = p.eval(x0, y1), f11 = p.eval(x1, y1);
      std::vector<C> pts;
      if ((f00 > 0.0) != (f10 > 0.0)) pts.push_back(cross(x0, y0, x1, y0));
      if ((f10 > 0.0) != (f11 > 0.0)) pts.push_back(cross(x1, y0, x1, y1));
      if ((f11 > 0.0) != (f01 > 0.0)) pts.push_back(cross(x1, y1, x0, y1));
      if ((f01 > 0.0) != (f00 > 0.0)) pts.push_back(cross(x0, y1, x0, y0));
      if (pts.size() == 2) segments.emplace_back(pts[0], pts[1]);
      if (pts.size() == 4) {  // saddle: split by the center sign
        const bool center = p.eval(0.5 * (x0 + x1), 0.5 * (y0 + y1)) > 0.0;
        if (center == (f00 > 0.0)) {
          segments.emplace_back(pts[0], pts[3]);
          segments.emplace_back(pts[1], pts[2]);
        } else {
          segments.emplace_back(pts[0], pts[1]);
          segments.emplace_back(pts[2], pts[3]);
        }
      }
    }
  }
  return segments;
}

}  // namespace expmom
