#include "expmom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "expmom/gauss.hpp"

namespace expmom {

namespace {

struct Cell {
  double x0, x1, y0, y1;

  double cx() const { return 0.5 * (x0 + x1); }
  double cy() const { return 0.5 * (y0 + y1); }
};

// Terms unpacked from the std::map representation; the engine evaluates
// constraints at every stencil and Gauss node, so contiguous storage pays.
struct FlatPoly {
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms;
  int degree = 0;

  explicit FlatPoly(const Poly2& p) {
    terms.reserve(p.terms().size());
    for (const auto& [idx, c] : p.terms()) {
      terms.push_back({idx.i, idx.j, c});
      degree = std::max(degree, idx.total());
    }
  }

  double eval(double x, double y) const {
    double xp[1 + 64], yp[1 + 64];
    xp[0] = yp[0] = 1.0;
    for (int k = 1; k <= degree; ++k) {
      xp[k] = xp[k - 1] * x;
      yp[k] = yp[k - 1] * y;
    }
    double acc = 0.0;
    for (const Term& t : terms) acc += t.c * xp[t.i] * yp[t.j];
    return acc;
  }
};

enum class SignStatus { positive, nonpositive, mixed };

// Uniform stencil signs are trusted only from this depth on; a coarse cell
// can sample all nine points on one side of a thin feature (a ring, a small
// hole) and would otherwise prune it away entirely.
constexpr int kMinClassifyDepth = 3;

SignStatus stencil_status(const FlatPoly& p, const Cell& c) {
  const double xs[3] = {c.x0, c.cx(), c.x1};
  const double ys[3] = {c.y0, c.cy(), c.y1};
  int pos = 0, nonpos = 0;
  for (double x : xs)
    for (double y : ys)
      (p.eval(x, y) > 0.0 ? pos : nonpos)++;
  if (nonpos == 0) return SignStatus::positive;
  if (pos == 0) return SignStatus::nonpositive;
  return SignStatus::mixed;
}

class Engine {
 public:
  Engine(const std::function<void(double, double, double*)>& fields, int dim,
         const SemiAlgebraicSet& region, const std::vector<Poly2>& markers,
         const QuadratureConfig& cfg)
      : fields_(fields), dim_(dim), cfg_(cfg), rule_(gauss_legendre(cfg.gauss_order)),
        buffer_(static_cast<std::size_t>(dim)), scratch_(dim) {
    constraints_.reserve(region.constraints.size());
    for (const Poly2& p : region.constraints) constraints_.emplace_back(p);
    markers_.reserve(markers.size());
    for (const Poly2& p : markers) markers_.emplace_back(p);
    root_ = {region.box.xmin, region.box.xmax, region.box.ymin, region.box.ymax};
  }

  FieldIntegral run() {
    FieldIntegral out;
    out.value = Eigen::VectorXd::Zero(dim_);
    out.coarse = Eigen::VectorXd::Zero(dim_);
    visit(root_, 0, out.value, out.coarse);
    out.cells_used = cells_;
    return out;
  }

 private:
  bool inside_constraints(double x, double y) const {
    for (const FlatPoly& p : constraints_)
      if (!(p.eval(x, y) > 0.0)) return false;
    return true;
  }

  // Accumulates the full-depth and depth-minus-one values of a cell. The two
  // passes share one traversal: they only differ on cells that are still
  // being refined at max_depth - 1.
  void visit(const Cell& cell, int depth, Eigen::VectorXd& full, Eigen::VectorXd& coarse) {
    const bool classifiable = depth >= kMinClassifyDepth || constraints_.empty();
    bool all_positive = true;
    for (const FlatPoly& p : constraints_) {
      switch (stencil_status(p, cell)) {
        case SignStatus::nonpositive:
          if (classifiable) {
            ++cells_;
            return;  // outside at the stencil resolution
          }
          all_positive = false;
          break;
        case SignStatus::mixed:
          all_positive = false;
          break;
        case SignStatus::positive:
          break;
      }
    }
    const bool certified_inside = all_positive && classifiable;
    bool needs_refine = !certified_inside;
    if (!needs_refine)
      for (const FlatPoly& m : markers_)
        if (stencil_status(m, cell) == SignStatus::mixed) {
          needs_refine = true;
          break;
        }

    if (!needs_refine) {
      ++cells_;
      scratch_.setZero();
      gauss_cell(cell, false, scratch_);
      full += scratch_;
      coarse += scratch_;
      return;
    }
    if (depth >= cfg_.max_depth) {
      ++cells_;
      scratch_.setZero();
      gauss_cell(cell, !certified_inside, scratch_);
      full += scratch_;
      coarse += scratch_;
      return;
    }
    if (depth == cfg_.max_depth - 1) gauss_cell(cell, !certified_inside, coarse);
    const double xm = cell.cx(), ym = cell.cy();
    const Cell children[4] = {{cell.x0, xm, cell.y0, ym},
                              {xm, cell.x1, cell.y0, ym},
                              {cell.x0, xm, ym, cell.y1},
                              {xm, cell.x1, ym, cell.y1}};
    if (depth == cfg_.max_depth - 1) {
      Eigen::VectorXd discard = Eigen::VectorXd::Zero(dim_);
      for (const Cell& child : children) visit(child, depth + 1, full, discard);
    } else {
      for (const Cell& child : children) visit(child, depth + 1, full, coarse);
    }
  }

  void gauss_cell(const Cell& cell, bool indicator, Eigen::VectorXd& acc) {
    const double hx = 0.5 * (cell.x1 - cell.x0), hy = 0.5 * (cell.y1 - cell.y0);
    const double mx = cell.cx(), my = cell.cy();
    const int n = cfg_.gauss_order;
    for (int a = 0; a < n; ++a) {
      const double x = mx + hx * rule_.nodes[a];
      for (int b = 0; b < n; ++b) {
        const double y = my + hy * rule_.nodes[b];
        if (indicator && !inside_constraints(x, y)) continue;
        fields_(x, y, buffer_.data());
        const double w = hx * hy * rule_.weights[a] * rule_.weights[b];
        for (int k = 0; k < dim_; ++k) acc[k] += w * buffer_[static_cast<std::size_t>(k)];
      }
    }
  }

  const std::function<void(double, double, double*)>& fields_;
  int dim_;
  const QuadratureConfig& cfg_;
  const GaussRule& rule_;
  std::vector<FlatPoly> constraints_;
  std::vector<FlatPoly> markers_;
  Cell root_{};
  std::vector<double> buffer_;
  Eigen::VectorXd scratch_;
  long cells_ = 0;
};

}  // namespace

void QuadratureConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("QuadratureConfig: tol must be positive");
  if (max_depth < 1) throw std::invalid_argument("QuadratureConfig: max_depth must be >= 1");
  if (gauss_order < 2) throw std::invalid_argument("QuadratureConfig: gauss_order must be >= 2");
}

FieldIntegral integrate_fields(const std::function<void(double, double, double*)>& fields,
                               int dim, const SemiAlgebraicSet& region,
                               const std::vector<Poly2>& refine_markers,
                               const QuadratureConfig& cfg) {
  cfg.validate();
  region.validate();
  return Engine(fields, dim, region, refine_markers, cfg).run();
}

QuadratureResult integrate_region(const RealField& f, const SemiAlgebraicSet& region,
                                  const QuadratureConfig& cfg) {
  auto fields = [&f](double x, double y, double* out) { out[0] = f(x, y); };
  const FieldIntegral fi = integrate_fields(fields, 1, region, {}, cfg);
  return {fi.value[0], std::abs(fi.value[0] - fi.coarse[0]), fi.cells_used};
}

ComplexQuadratureResult integrate_region(const ComplexField& f, const SemiAlgebraicSet& region,
                                         const QuadratureConfig& cfg) {
  // Complex integrals are two real integrals sharing one traversal.
  auto fields = [&f](double x, double y, double* out) {
    const std::complex<double> v = f(x, y);
    out[0] = v.real();
    out[1] = v.imag();
  };
  const FieldIntegral fi = integrate_fields(fields, 2, region, {}, cfg);
  return {{fi.value[0], fi.value[1]},
          std::abs(fi.value[0] - fi.coarse[0]) + std::abs(fi.value[1] - fi.coarse[1]),
          fi.cells_used};
}

MomentVector compute_moments(const SemiAlgebraicSet& region, int order,
                             const QuadratureConfig& cfg, QuadratureResult* info) {
  if (order < 0) throw std::invalid_argument("compute_moments: order must be non-negative");
  const int dim = moment_dimension(order);
  const auto indices = multi_indices(order);
  auto fields = [&](double x, double y, double* out) {
    double xp[1 + 64], yp[1 + 64];
    xp[0] = yp[0] = 1.0;
    for (int k = 1; k <= order; ++k) {
      xp[k] = xp[k - 1] * x;
      yp[k] = yp[k - 1] * y;
    }
    for (int k = 0; k < dim; ++k) {
      const MultiIndex idx = indices[static_cast<std::size_t>(k)];
      out[k] = xp[idx.i] * yp[idx.j];
    }
  };
  const FieldIntegral fi = integrate_fields(fields, dim, region, {}, cfg);
  if (info) {
    info->value = fi.value[0];
    info->error_estimate = (fi.value - fi.coarse).cwiseAbs().maxCoeff();
    info->cells_used = fi.cells_used;
  }
  return {order, fi.value};
}

QuadratureResult l1_norm(const Poly2& p, const SemiAlgebraicSet& K, const QuadratureConfig& cfg) {
  auto fields = [&p](double x, double y, double* out) { out[0] = std::abs(p.eval(x, y)); };
  const FieldIntegral fi = integrate_fields(fields, 1, K, {p}, cfg);
  return {fi.value[0], std::abs(fi.value[0] - fi.coarse[0]), fi.cells_used};
}

QuadratureResult positive_part_integral(const Poly2& p, const SemiAlgebraicSet& K,
                                        const QuadratureConfig& cfg) {
  SemiAlgebraicSet region = K;
  region.constraints.push_back(p);
  auto fields = [&p](double x, double y, double* out) { out[0] = p.eval(x, y); };
  const FieldIntegral fi = integrate_fields(fields, 1, region, {}, cfg);
  return {fi.value[0], std::abs(fi.value[0] - fi.coarse[0]), fi.cells_used};
}

namespace {

double cell_distance(const Cell& c, double x, double y) {
  const double dx = std::max({c.x0 - x, 0.0, x - c.x1});
  const double dy = std::max({c.y0 - y, 0.0, y - c.y1});
  return std::hypot(dx, dy);
}

void distance_visit(const std::vector<FlatPoly>& constraints, const Cell& cell, int depth,
                    int level, double x, double y, double& best) {
  if (cell_distance(cell, x, y) >= best) return;
  const bool classifiable = level >= kMinClassifyDepth || constraints.empty();
  bool mixed = !classifiable && !constraints.empty();
  for (const FlatPoly& p : constraints) {
    const SignStatus st = stencil_status(p, cell);
    if (st == SignStatus::nonpositive && classifiable) return;
    if (st != SignStatus::positive) mixed = true;
  }
  if (!mixed || depth == 0) {
    best = std::min(best, cell_distance(cell, x, y));
    return;
  }
  const double xm = cell.cx(), ym = cell.cy();
  const Cell children[4] = {{cell.x0, xm, cell.y0, ym},
                            {xm, cell.x1, cell.y0, ym},
                            {cell.x0, xm, ym, cell.y1},
                            {xm, cell.x1, ym, cell.y1}};
  for (const Cell& child : children) distance_visit(constraints, child, depth - 1, x, y, best);
}

}  // namespace

double region_distance(const SemiAlgebraicSet& region, double x, double y, int depth) {
  region.validate();
  std::vector<FlatPoly> constraints;
  constraints.reserve(region.constraints.size());
  for (const Poly2& p : region.constraints) constraints.emplace_back(p);
  double best = std::numeric_limits<double>::infinity();
  const Cell root{region.box.xmin, region.box.xmax, region.box.ymin, region.box.ymax};
  distance_visit(constraints, root, std::max(depth, 0), x, y, best);
  return best;
}

}  // namespace expmom
