// Acceptance gate: runs the verification suites once and condenses them
// into ten go/no-go lines, each with a wall-clock budget. Exits nonzero
// when any line fails.

#include <openxyz/suites.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace {

using oxyz::CheckResult;

struct Criterion {
  int id;
  const char* label;
  std::vector<std::pair<std::string, std::string>> checks;
  double budget_ms;
  bool skip_allowed;
};

}  // namespace

int main() {
  const std::vector<std::string> needed = {
      "elliptic", "vertex", "face", "fbasis",
      "partition", "determinants", "spectrum"};
  std::map<std::string, std::map<std::string, CheckResult>> results;
  for (const auto& suite : needed) {
    for (auto& c : oxyz::run_suite(suite)) results[suite][c.name] = c;
  }

  const std::vector<Criterion> criteria = {
      {1,
       "theta-function identities",
       {{"elliptic", "riemann-identity"},
        {"elliptic", "theta-quasi-periodicity"},
        {"elliptic", "sigma-duplication"}},
       2000.0,
       false},
      {2,
       "vertex and face consistency relations",
       {{"vertex", "yang-baxter"},
        {"vertex", "unitarity"},
        {"vertex", "reflection"},
        {"vertex", "dual-reflection"},
        {"face", "dynamical-yang-baxter"},
        {"face", "face-unitarity"},
        {"face", "face-crossing"}},
       10000.0,
       false},
      {3,
       "boundary face-vertex correspondence",
       {{"face", "face-vertex-exchange"},
        {"face", "boundary-reconstruction"}},
       10000.0,
       false},
      {4,
       "factorizing twist and polarization-free operators",
       {{"fbasis", "twist-triangularity"},
        {"fbasis", "twist-nondegeneracy"},
        {"fbasis", "twist-factorization"},
        {"fbasis", "twisted-closed-forms"},
        {"fbasis", "creation-conjugation"}},
       60000.0,
       false},
      {5,
       "reflecting-end partition determinants",
       {{"partition", "reflecting-end-kind-one-n2"},
        {"partition", "reflecting-end-kind-two-n2"},
        {"partition", "reflecting-end-kind-one-n4"},
        {"partition", "reflecting-end-kind-two-n4"}},
       60000.0,
       false},
      {6,
       "scalar-product determinants against ladders",
       {{"determinants", "scalar-kind-one-m1"},
        {"determinants", "scalar-kind-two-m1"},
        {"determinants", "scalar-kind-one-m2"},
        {"determinants", "scalar-kind-two-m2"}},
       300000.0,
       false},
      {7,
       "norm determinants and coincidence limit",
       {{"determinants", "norm-kind-one-m1"},
        {"determinants", "norm-kind-two-m1"},
        {"determinants", "norm-kind-one-m2"},
        {"determinants", "norm-kind-two-m2"},
        {"determinants", "coincidence-limit"}},
       120000.0,
       false},
      {8,
       "transfer spectrum and eigenstate relations",
       {{"spectrum", "commutation-n2"},
        {"spectrum", "commutation-n4"},
        {"spectrum", "eigenvalue-in-spectrum"},
        {"spectrum", "eigenstate-relation"}},
       120000.0,
       false},
      {9,
       "orthogonality of distinct on-shell states",
       {{"determinants", "orthogonality"}},
       120000.0,
       true},
      {10,
       "trigonometric degeneration",
       {{"elliptic", "trig-degeneration"}},
       1000.0,
       false},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    bool ok = true;
    bool skipped = false;
    std::string why;
    std::string note;
    double worst = 0.0;
    double ms = 0.0;
    for (const auto& [suite, check] : cr.checks) {
      const auto sit = results.find(suite);
      if (sit == results.end() ||
          sit->second.find(check) == sit->second.end()) {
        ok = false;
        why = suite + "/" + check + " missing";
        break;
      }
      const CheckResult& c = sit->second.at(check);
      ms += c.wall_ms;
      if (c.skipped) {
        if (cr.skip_allowed) {
          skipped = true;
          note = c.detail;
          continue;
        }
        ok = false;
        why = suite + "/" + check + " skipped: " + c.detail;
        break;
      }
      if (c.tol > 0.0 && c.residual / c.tol > worst)
        worst = c.residual / c.tol;
      if (!c.pass) {
        ok = false;
        why = suite + "/" + check + " residual " +
              std::to_string(c.residual) + " above " + std::to_string(c.tol);
        break;
      }
    }
    if (ok && ms > cr.budget_ms) {
      ok = false;
      why = "over budget";
    }
    if (!ok) ++failed;
    if (!ok) {
      std::printf("criterion %2d FAIL %-50s %s\n", cr.id, cr.label,
                  why.c_str());
    } else if (skipped) {
      std::printf("criterion %2d PASS %-50s skipped: %s\n", cr.id, cr.label,
                  note.c_str());
    } else {
      std::printf(
          "criterion %2d PASS %-50s worst residual at %.1e of its gate, "
          "%6.0f ms of %6.0f ms\n",
          cr.id, cr.label, worst, ms, cr.budget_ms);
    }
  }
  return failed == 0 ? 0 : 1;
}
