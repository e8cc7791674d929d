// Command-line front end: parses flags, reads the JSON input document, and
// dispatches to the library's run(). Results go to the output path (or
// stdout); machine-readable errors go to stderr.

#include <CLI11.hpp>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "expmom/cli.hpp"

namespace {

using expmom::Json;

std::complex<double> parse_complex(std::string text) {
  std::erase(text, ' ');
  if (text.empty()) throw CLI::ValidationError("empty complex literal");
  auto parse_real = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw CLI::ValidationError("bad numeric literal \"" + s + "\"");
    return v;
  };
  const bool has_i = text.back() == 'i' || text.back() == 'j';
  if (!has_i) return {parse_real(text), 0.0};
  text.pop_back();
  // Split off the real part at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re = "0", im = text;
  if (split != std::string::npos) {
    re = text.substr(0, split);
    im = text.substr(split);
  }
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {parse_real(re), parse_real(im)};
}

Json read_input_document(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot open input file \"" + path + "\"");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  return Json::parse(text);  // throws nlohmann parse_error on malformed JSON
}

int emit(const expmom::CommandOutcome& outcome, const std::string& output_path) {
  if (outcome.exit_code != 0) {
    std::cerr << expmom::dump_json_17(outcome.error);
    return outcome.exit_code;
  }
  const std::string text = expmom::dump_json_17(outcome.output);
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(output_path);
    if (!file) {
      std::cerr << expmom::dump_json_17(
          Json{{"error", {{"code", "io"}, {"message", "cannot write \"" + output_path + "\""}}}});
      return 2;
    }
    file << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated planar L-moment problems and exponential transforms of plane domains"};
  app.require_subcommand(0, 1);

  expmom::CommandRequest request;
  std::string input_path = "-";
  std::string output_path;
  std::string triangle;
  int monomial = 0;
  bool show_version = false;
  app.add_flag("--version", show_version, "print version and configuration defaults");

  const std::vector<std::pair<std::string, std::string>> json_commands = {
      {"moments", "moment vector of a semi-algebraic region"},
      {"kernel", "exponential transform at a point pair"},
      {"critical-l", "critical bound of the truncated L-problem"},
      {"krein", "solvability margin of the [0,1] moment problem"},
      {"reconstruct", "extremal-solution reconstruction from moments"},
      {"chebyshev", "generalized Chebyshev bounds"},
      {"sign-moments", "moments of the sign of a polynomial"},
      {"positivity", "positivity report of a kernel (Gram + two-sided bound)"},
      {"factorize", "finite operator realization of a kernel"},
  };

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", request.tol, "quadrature absolute tolerance");
    sub->add_option("--max-depth", request.max_depth, "quadtree subdivision limit");
    sub->add_option("--gauss-order", request.gauss_order, "tensor Gauss points per axis");
    sub->add_option("--grid", request.grid, "midpoint grid resolution for discretized programs");
    sub->add_option("--seed", request.seed, "seed for stochastic searches");
    sub->add_option("--output-path", output_path, "write the result document here (default stdout)");
  };

  for (const auto& [name, description] : json_commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--input", input_path, "JSON input document (\"-\" for stdin)");
    add_common(sub);
    if (name == "reconstruct")
      sub->add_flag("--emit-grid", request.emit_grid, "include the recovered zero-set polyline");
  }
  CLI::App* qi = app.add_subcommand("quadrature-identity",
                                    "two-side triangle quadrature identity for z^k");
  qi->add_option("--triangle", triangle, "three vertices, e.g. \"0,1,i\"")->required();
  qi->add_option("--monomial", monomial, "monomial power k")->required();
  add_common(qi);

  CLI11_PARSE(app, argc, argv);

  if (show_version) {
    std::cout << expmom::version_string() << "\n"
              << expmom::dump_json_17(expmom::config_defaults());
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  CLI::App* active = app.get_subcommands().front();
  request.subcommand = active->get_name();
  try {
    if (request.subcommand == "quadrature-identity") {
      Json verts = Json::array();
      std::stringstream parts(triangle);
      std::string token;
      while (std::getline(parts, token, ','))
        verts.push_back(expmom::complex_to_json(parse_complex(token)));
      request.input = Json{{"triangle", std::move(verts)}, {"monomial", monomial}};
    } else {
      request.input = read_input_document(input_path);
    }
  } catch (const std::exception& e) {
    std::cerr << expmom::dump_json_17(
        Json{{"error", {{"code", "validation"}, {"message", e.what()}}}});
    return 2;
  }

  return emit(expmom::run(request), output_path);
}
