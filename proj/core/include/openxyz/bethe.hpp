#pragma once

#include <vector>

#include "openxyz/face_monodromy.hpp"

namespace oxyz {

// The two families of Bethe equations, matching the two ladder-state
// constructions: One pairs with ScalarKind::I_I, Two with ScalarKind::II_II.
enum class BetheFamily { One, Two };

// Maps the on-shell scalar-product kinds to their equation family; throws
// ConfigError for the mixed kinds, which carry no on-shell condition.
BetheFamily family_of(ScalarKind kind);

// Ratio RHS/LHS of the equation for root j (0-based), grouped as boundary
// block x inhomogeneity block x pair block. Equals 1 exactly on shell.
cx bae_ratio(const ModelParams& p, BetheFamily fam, int j,
             const std::vector<cx>& v);

// d/dv_alpha log bae_ratio(j), assembled from sigma log-derivatives.
cx bae_log_deriv(const ModelParams& p, BetheFamily fam, int j, int alpha,
                 const std::vector<cx>& v);

// Principal-branch log residuals f_j = Log(bae_ratio(j)) and their maximum
// magnitude; zero exactly on shell.
Vec bae_residual(const ModelParams& p, BetheFamily fam,
                 const std::vector<cx>& v);
double bae_residual_norm(const ModelParams& p, BetheFamily fam,
                         const std::vector<cx>& v);

// Jacobian J(j, alpha) = d f_j / d v_alpha; branch-independent.
Mat bae_jacobian(const ModelParams& p, BetheFamily fam,
                 const std::vector<cx>& v);

struct SolverConfig {
  int max_iter = 200;
  double tol = 1e-11;
  double damping = 0.5;
  int seeds = 32;
  double min_separation = 1e-6;
  double dedup_tol = 1e-7;
  unsigned rng_seed = 1234;
};

struct BetheRoots {
  std::vector<cx> v;
  double residual;
  int iterations;
};

// Damped Newton iteration in log form from seeded starts inside the
// fundamental cell. Returns the distinct converged root sets, canonicalized
// (each root reduced modulo the real period and the reflection
// v -> -v - eta, under both of which the equations are invariant) and
// sorted; may be empty.
std::vector<BetheRoots> solve_bae(const ModelParams& p, BetheFamily fam,
                                  int M, const SolverConfig& cfg = {});

// Transfer-matrix eigenvalue at spectral point u for a root set of the
// given family (exact when the roots are on shell; M = 0 is the bare
// reference state).
cx transfer_eigenvalue(const ModelParams& p, BetheFamily fam, cx u,
                       const std::vector<cx>& v);

}  // namespace oxyz
