#pragma once
// Batch front end: a RunConfig names a subcommand plus the model and
// evaluation parameters, run_command executes it and returns the payload
// (JSON, or CSV where the output is a plain table) together with any CSV
// side tables.  Pure with respect to the filesystem except for an optional
// input series file; writing outputs is the caller's job, which keeps the
// whole pipeline callable in-process from tests.
//
// Exit codes: 0 success, 1 verification/numeric failure, 2 usage error,
// 3 resource limit.  Failures produce a machine-readable {"error": {...}}
// JSON payload.
//
// Evaluation policy: with beta > 0 the truncated series are evaluated
// numerically only for z <= 0.95 * zc_estimate (plus a one-millionth slack
// so rounded endpoints pass); exact-arithmetic commands (decompose) are
// exempt, as is beta = 0 where the lace kernel vanishes and every series
// involved terminates.  "auto:0.9zc" resolves z to the nearest millionth of
// 0.9 * zc_estimate and records the resolved value in the output.

#include <map>
#include <string>

#include "wsaw/io.hpp"

namespace wsaw {

struct RunConfig {
  std::string command;  // enumerate|verify|pi|green|infrared|decompose|
                        // bootstrap|report
  int d = 5;
  std::string beta = "1/10";     // rational "p/q"
  int order = 6;                 // truncation order N
  std::string z = "auto:0.9zc";  // rational "p/q" or "auto:0.9zc";
                                 // the green command reads it as mu
  int box = 6;                   // box radius for spatial tables
  int grid = 64;                 // torus grid resolution (even)
  int threads = 0;               // 0 = OpenMP default
  double work_limit = 1e10;      // enumeration work bound
  std::string input;             // optional input series file (verify)
  std::string out;               // informational; caller writes files
  std::string format = "json";   // json|csv
};

struct CmdResult {
  int exit_code = 0;
  std::string output;  // primary payload (JSON or CSV)
  // suffix -> content, e.g. "tables.csv"; written next to the main output
  std::map<std::string, std::string> side_files;
};

CmdResult run_command(const RunConfig& cfg);

}  // namespace wsaw
