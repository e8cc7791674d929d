#include "expmom/cli.hpp"

#include <stdexcept>

#include "expmom/kernel.hpp"
#include "expmom/lproblem.hpp"
#include "expmom/positivity.hpp"
#include "expmom/quadrature.hpp"
#include "expmom/schwarz.hpp"
#include "expmom/version.hpp"

namespace expmom {

namespace {

QuadratureConfig quad_of(const CommandRequest& r) { return {r.tol, r.max_depth, r.gauss_order}; }

LProblemConfig lcfg_of(const CommandRequest& r) { return {r.grid, quad_of(r), r.seed}; }

Json moment_problem_inputs(const CommandRequest& r, const char* extra = nullptr,
                           const char* extra2 = nullptr) {
  std::vector<std::string> required = {"set", "order", "moments"};
  std::vector<std::string> optional;
  if (extra) optional.emplace_back(extra);
  if (extra2) optional.emplace_back(extra2);
  check_fields(r.input, required, optional);
  return r.input;
}

// Kernel evaluator from the "kernel" input block: a closed-form shape or a
// semi-algebraic set behind the quadrature engine (memoized).
KernelFn kernel_from_json(const Json& j, const QuadratureConfig& quad) {
  if (j.contains("set")) {
    check_fields(j, {"set"});
    const SemiAlgebraicSet region = set_from_json(j["set"]);
    KernelOptions opts;
    opts.quad = quad;
    return memoize_kernel([region, opts](Complex z, Complex w) {
      return eval_exponential_kernel(region, z, w, opts).value;
    });
  }
  check_fields(j, {"kind"}, {"radius", "r", "R"});
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "disk") {
    check_fields(j, {"kind", "radius"});
    const DiskShape shape{j["radius"].get<double>()};
    return [shape](Complex z, Complex w) { return closed_form_kernel(shape, z, w).value; };
  }
  if (kind == "annulus") {
    check_fields(j, {"kind", "r", "R"});
    const AnnulusShape shape{j["r"].get<double>(), j["R"].get<double>()};
    return [shape](Complex z, Complex w) { return closed_form_kernel(shape, z, w).value; };
  }
  throw std::invalid_argument("kernel.kind: expected \"disk\" or \"annulus\"");
}

std::vector<PointPair> points_from_json(const Json& j) {
  std::vector<PointPair> points;
  if (!j.is_array()) throw std::invalid_argument("points: expected an array");
  for (const Json& e : j) {
    check_fields(e, {"s", "t"});
    points.push_back({complex_from_json(e["s"]), complex_from_json(e["t"])});
  }
  return points;
}

Json matrix_to_json(const Eigen::MatrixXcd& M) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json handle_moments(const CommandRequest& r) {
  check_fields(r.input, {"set", "order"});
  const SemiAlgebraicSet region = set_from_json(r.input["set"]);
  const int order = r.input["order"].get<int>();
  QuadratureResult info;
  const MomentVector moments = compute_moments(region, order, quad_of(r), &info);
  return Json{{"result", moments_to_json(moments)},
              {"diagnostics",
               {{"error_estimate", info.error_estimate}, {"cells_used", info.cells_used}}}};
}

Json handle_kernel(const CommandRequest& r) {
  check_fields(r.input, {"z", "w"}, {"set", "shape"});
  const Complex z = complex_from_json(r.input["z"]);
  const Complex w = complex_from_json(r.input["w"]);
  KernelEvaluation eval;
  if (r.input.contains("set") == r.input.contains("shape"))
    throw std::invalid_argument("kernel: provide exactly one of \"set\" or \"shape\"");
  if (r.input.contains("set")) {
    KernelOptions opts;
    opts.quad = quad_of(r);
    eval = eval_exponential_kernel(set_from_json(r.input["set"]), z, w, opts);
  } else {
    const Json& shape = r.input["shape"];
    check_fields(shape, {"kind"}, {"radius", "r", "R"});
    const std::string kind = shape["kind"].get<std::string>();
    if (kind == "disk") {
      check_fields(shape, {"kind", "radius"});
      eval = closed_form_kernel(DiskShape{shape["radius"].get<double>()}, z, w);
    } else if (kind == "annulus") {
      check_fields(shape, {"kind", "r", "R"});
      eval = closed_form_kernel(AnnulusShape{shape["r"].get<double>(), shape["R"].get<double>()},
                                z, w);
    } else {
      throw std::invalid_argument("kernel.shape.kind: expected \"disk\" or \"annulus\"");
    }
  }
  return Json{{"result",
               {{"z", complex_to_json(eval.z)},
                {"w", complex_to_json(eval.w)},
                {"value_re", eval.value.real()},
                {"value_im", eval.value.imag()},
                {"method", eval.method == KernelMethod::numeric ? "numeric" : "closed_form"},
                {"error_estimate", eval.error_estimate}}},
              {"diagnostics", Json::object()}};
}

Json handle_critical_l(const CommandRequest& r) {
  moment_problem_inputs(r);
  const SemiAlgebraicSet K = set_from_json(r.input["set"]);
  const int order = r.input["order"].get<int>();
  const MomentVector a = moments_from_json(r.input["moments"]);
  const CriticalBound bound = critical_L(K, order, a, lcfg_of(r));
  Json result{{"L0", bound.L0}};
  result["p_star"] = bound.minimizer ? poly2_to_json(*bound.minimizer) : Json(nullptr);
  return Json{{"result", std::move(result)}, {"diagnostics", {{"grid", r.grid}}}};
}

Json handle_krein(const CommandRequest& r) {
  moment_problem_inputs(r);
  const SemiAlgebraicSet K = set_from_json(r.input["set"]);
  const int order = r.input["order"].get<int>();
  const MomentVector a = moments_from_json(r.input["moments"]);
  const double margin = krein_margin(K, order, a, lcfg_of(r));
  return Json{{"result", {{"margin", margin}, {"solvable", margin <= 1e-6}}},
              {"diagnostics", {{"grid", r.grid}, {"seed", r.seed}}}};
}

Json handle_reconstruct(const CommandRequest& r) {
  moment_problem_inputs(r, "model");
  const SemiAlgebraicSet K = set_from_json(r.input["set"]);
  const int order = r.input["order"].get<int>();
  const MomentVector a = moments_from_json(r.input["moments"]);
  DensityModel model = DensityModel::indicator;
  if (r.input.contains("model")) {
    const std::string m = r.input["model"].get<std::string>();
    if (m == "sign")
      model = DensityModel::sign;
    else if (m != "indicator")
      throw std::invalid_argument("reconstruct.model: expected \"indicator\" or \"sign\"");
  }
  const ExtremalSolution sol = extremal_reconstruct(K, order, a, lcfg_of(r), model);
  Json result{{"p", poly2_to_json(sol.p)},
              {"critical_L", sol.critical_L},
              {"moment_residual", sol.moment_residual},
              {"converged", sol.converged}};
  if (r.emit_grid) {
    Json segments = Json::array();
    for (const auto& [a0, b0] : zero_set_segments(sol.p, K, r.grid))
      segments.push_back(Json::array(
          {Json::array({a0.real(), a0.imag()}), Json::array({b0.real(), b0.imag()})}));
    result["zero_set"] = std::move(segments);
  }
  return Json{{"result", std::move(result)}, {"diagnostics", {{"grid", r.grid}, {"seed", r.seed}}}};
}

Json handle_chebyshev(const CommandRequest& r) {
  moment_problem_inputs(r, "psi");
  if (!r.input.contains("psi")) throw std::invalid_argument("chebyshev: missing field \"psi\"");
  const SemiAlgebraicSet K = set_from_json(r.input["set"]);
  const int order = r.input["order"].get<int>();
  const MomentVector a = moments_from_json(r.input["moments"]);
  const Poly2 psi = poly2_from_json(r.input["psi"]);
  const ChebyshevBounds bounds = chebyshev_bounds(K, order, a, psi, lcfg_of(r));
  long interior_min = 0, interior_max = 0;
  for (Eigen::Index k = 0; k < bounds.minimizer.values.size(); ++k) {
    if (bounds.minimizer.values[k] > 1e-9 && bounds.minimizer.values[k] < 1.0 - 1e-9) ++interior_min;
    if (bounds.maximizer.values[k] > 1e-9 && bounds.maximizer.values[k] < 1.0 - 1e-9) ++interior_max;
  }
  return Json{{"result", {{"min_value", bounds.min_value}, {"max_value", bounds.max_value}}},
              {"diagnostics",
               {{"grid", r.grid},
                {"fractional_nodes_min", interior_min},
                {"fractional_nodes_max", interior_max}}}};
}

Json handle_sign_moments(const CommandRequest& r) {
  check_fields(r.input, {"set", "order", "poly"});
  const SemiAlgebraicSet K = set_from_json(r.input["set"]);
  const int order = r.input["order"].get<int>();
  const Poly2 p = poly2_from_json(r.input["poly"]);
  const MomentVector moments = moments_of_sign(p, K, order, quad_of(r));
  return Json{{"result", moments_to_json(moments)}, {"diagnostics", Json::object()}};
}

Json handle_positivity(const CommandRequest& r) {
  check_fields(r.input, {"kernel"}, {"points", "psd_tol"});
  const KernelFn kernel = kernel_from_json(r.input["kernel"], quad_of(r));
  const std::vector<PointPair> points =
      r.input.contains("points") ? points_from_json(r.input["points"]) : default_sample_pairs(6);
  const double tol = r.input.contains("psd_tol") ? r.input["psd_tol"].get<double>() : 1e-8;
  const FourPointSampler sampler{kernel, points};
  const GramMatrix gram = build_gram(sampler);
  const PsdReport psd = psd_gram_check(gram, tol);
  const SandwichReport sandwich = sandwich_check(sampler, tol);
  return Json{{"result",
               {{"is_psd", psd.is_psd},
                {"lambda_min", psd.lambda_min},
                {"sandwich",
                 {{"lower_psd", sandwich.lower_psd},
                  {"upper_psd", sandwich.upper_psd},
                  {"lower_lambda_min", sandwich.lower_lambda_min},
                  {"upper_lambda_min", sandwich.upper_lambda_min}}}}},
              {"diagnostics",
               {{"max_asymmetry", psd.max_asymmetry},
                {"points", static_cast<long>(points.size())},
                {"psd_tol", tol}}}};
}

Json handle_factorize(const CommandRequest& r) {
  check_fields(r.input, {"kernel"}, {"points", "eps", "ladder"});
  const KernelFn kernel = kernel_from_json(r.input["kernel"], quad_of(r));
  const std::vector<PointPair> points =
      r.input.contains("points") ? points_from_json(r.input["points"]) : default_sample_pairs(20);
  OperatorConfig cfg;
  if (r.input.contains("eps")) cfg.eps = r.input["eps"].get<double>();
  if (r.input.contains("ladder")) cfg.ladder = r.input["ladder"].get<int>();
  const FourPointSampler sampler{kernel, points};
  const OperatorReconstruction rec = reconstruct_operator(sampler, cfg);
  const DeterminantalReport check =
      verify_determinantal_identity(rec.op, kernel, points, r.tol);
  Json xi = Json::array();
  for (Eigen::Index k = 0; k < rec.op.xi.size(); ++k) xi.push_back(complex_to_json(rec.op.xi[k]));
  return Json{{"result",
               {{"dimension", rec.diagnostics.span_dimension},
                {"T", matrix_to_json(rec.op.T)},
                {"xi", std::move(xi)}}},
              {"diagnostics",
               {{"condition", rec.diagnostics.condition},
                {"fit_residual", rec.diagnostics.fit_residual},
                {"adjoint_residual", rec.diagnostics.adjoint_residual},
                {"link_residual", rec.diagnostics.link_residual},
                {"factorization_error", rec.diagnostics.factor_error},
                {"determinantal_residual", check.max_residual}}}};
}

Json handle_quadrature_identity(const CommandRequest& r) {
  check_fields(r.input, {"triangle", "monomial"});
  if (!r.input["triangle"].is_array() || r.input["triangle"].size() != 3)
    throw std::invalid_argument("quadrature-identity: triangle needs exactly 3 vertices");
  Polygon triangle;
  for (const Json& v : r.input["triangle"]) triangle.vertices.push_back(complex_from_json(v));
  const int k = r.input["monomial"].get<int>();
  if (k < 0) throw std::invalid_argument("quadrature-identity: monomial power must be >= 0");
  const TwoSideQuadrature q = two_side_quadrature(triangle, ZPoly::monomial(k));
  return Json{{"result",
               {{"direct", complex_to_json(q.direct)},
                {"two_side", complex_to_json(q.two_side)},
                {"abs_diff", std::abs(q.direct - q.two_side)}}},
              {"diagnostics", {{"carrier_pieces", static_cast<long>(q.functional.pieces().size())}}}};
}

Json echo_block(const CommandRequest& r) {
  return Json{{"subcommand", r.subcommand},
              {"input", r.input},
              {"flags",
               {{"tol", r.tol},
                {"max_depth", r.max_depth},
                {"gauss_order", r.gauss_order},
                {"grid", r.grid},
                {"seed", r.seed},
                {"emit_grid", r.emit_grid}}}};
}

}  // namespace

CommandOutcome run(const CommandRequest& request) {
  CommandOutcome outcome;
  try {
    quad_of(request).validate();
    Json body;
    if (request.subcommand == "moments")
      body = handle_moments(request);
    else if (request.subcommand == "kernel")
      body = handle_kernel(request);
    else if (request.subcommand == "critical-l")
      body = handle_critical_l(request);
    else if (request.subcommand == "krein")
      body = handle_krein(request);
    else if (request.subcommand == "reconstruct")
      body = handle_reconstruct(request);
    else if (request.subcommand == "chebyshev")
      body = handle_chebyshev(request);
    else if (request.subcommand == "sign-moments")
      body = handle_sign_moments(request);
    else if (request.subcommand == "positivity")
      body = handle_positivity(request);
    else if (request.subcommand == "factorize")
      body = handle_factorize(request);
    else if (request.subcommand == "quadrature-identity")
      body = handle_quadrature_identity(request);
    else
      throw std::invalid_argument("unknown subcommand \"" + request.subcommand + "\"");

    outcome.output = Json{{"inputs_echo", echo_block(request)},
                          {"result", body.at("result")},
                          {"diagnostics", body.at("diagnostics")}};
    outcome.exit_code = 0;
    return outcome;
  } catch (const MarginViolation& e) {
    outcome.exit_code = 3;
    outcome.error = Json{{"error",
                          {{"code", "margin_violation"},
                           {"message", e.what()},
                           {"point", complex_to_json(e.point)},
                           {"distance", e.distance},
                           {"margin", e.margin}}}};
  } catch (const MomentsInfeasible& e) {
    outcome.exit_code = 3;
    outcome.error = Json{{"error", {{"code", "moments_infeasible"}, {"message", e.what()}}}};
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = 2;
    outcome.error = Json{{"error", {{"code", "validation"}, {"message", e.what()}}}};
  } catch (const std::exception& e) {
    outcome.exit_code = 3;
    outcome.error = Json{{"error", {{"code", "numerical"}, {"message", e.what()}}}};
  }
  return outcome;
}

std::string version_string() { return std::string("expmom ") + kVersion; }

Json config_defaults() {
  const CommandRequest def;
  return Json{{"tol", def.tol},
              {"max_depth", def.max_depth},
              {"gauss_order", def.gauss_order},
              {"grid", def.grid},
              {"seed", def.seed},
              {"margin_scale", KernelOptions{}.margin_scale}};
}

}  // namespace expmom
