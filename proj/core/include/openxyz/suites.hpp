#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "openxyz/bethe.hpp"

namespace oxyz {

// Outcome of one named verification check: the worst residual observed over
// its sample, the gate it was held to, and the wall time spent.
struct CheckResult {
  std::string suite;
  std::string name;
  std::string detail;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
  double wall_ms = 0.0;
};

// Knobs shared by all suites. The model factory produces the parameter set
// for a requested chain length (default: the pinned fixture); sizes restricts
// the size-split checks (empty: suite defaults); tol overrides are keyed by
// check name, falling back to the suite name. Sampling is driven entirely by
// seed, so a run is reproducible from its configuration.
struct SuiteOptions {
  std::function<ModelParams(int)> model;
  std::vector<int> sizes;
  unsigned seed = 1234;
  SolverConfig solver;
  std::map<std::string, double> tol;
};

// Names of the available suites, in canonical order.
std::vector<std::string> suite_names();

// Runs one suite and returns its check records. Unknown names throw
// ConfigError. Exceptions raised inside a check are converted into a failing
// record carrying the message, so one degenerate point cannot abort a run.
std::vector<CheckResult> run_suite(const std::string& name,
                                   const SuiteOptions& opt = {});

}  // namespace oxyz
