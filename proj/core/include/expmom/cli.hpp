#pragma once

#include <cstdint>
#include <string>

#include "expmom/jsonio.hpp"

namespace expmom {

// One CLI invocation: a subcommand, its JSON input document, and the shared
// numeric flags. Unknown fields anywhere in the input are rejected.
struct CommandRequest {
  std::string subcommand;
  Json input = Json::object();
  double tol = 1e-8;
  int max_depth = 12;
  int gauss_order = 8;
  int grid = 200;
  std::uint64_t seed = 0;
  bool emit_grid = false;
};

struct CommandOutcome {
  // 0 success, 2 validation failure, 3 numerical failure or rejected
  // precondition.
  int exit_code = 0;
  Json output;  // {"inputs_echo":..., "result":..., "diagnostics":...}
  Json error;   // machine-readable {"error": {"code":..., "message":...}}
};

CommandOutcome run(const CommandRequest& request);

std::string version_string();
Json config_defaults();

}  // namespace expmom
