#include "openxyz/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include <Eigen/Dense>

namespace oxyz {

namespace {

cx checked_div(cx num, cx den, const char* what) {
  if (std::abs(den) <= kPoleThreshold) {
    throw NearPole(std::string(what) + ": sigma denominator at pole");
  }
  return num / den;
}

// Boundary block of the equation ratio (the inverted single-root side).
cx boundary_ratio(const ModelParams& p, const Elliptic& e, BetheFamily fam,
                  cx v) {
  const cx l1 = p.lambda1, l2 = p.lambda2, xi = p.xi, xb = p.xibar,
           eta = p.eta;
  cx num, den;
  if (fam == BetheFamily::One) {
    num = e.sigma(l2 + xb + v + eta) * e.sigma(l2 + xi - v - eta) *
          e.sigma(l1 + xb - v - eta) * e.sigma(l1 + xi + v + eta);
    den = e.sigma(l2 + xb - v) * e.sigma(l2 + xi + v) *
          e.sigma(l1 + xb + v) * e.sigma(l1 + xi - v);
  } else {
    num = e.sigma(l2 + xb - v - eta) * e.sigma(l2 + xi + v + eta) *
          e.sigma(l1 + xb + v + eta) * e.sigma(l1 + xi - v - eta);
    den = e.sigma(l2 + xb + v) * e.sigma(l2 + xi - v) *
          e.sigma(l1 + xb - v) * e.sigma(l1 + xi + v);
  }
  return checked_div(num, den, "boundary block");
}

cx boundary_log_deriv(const ModelParams& p, const Elliptic& e,
                      BetheFamily fam, cx v) {
  const cx l1 = p.lambda1, l2 = p.lambda2, xi = p.xi, xb = p.xibar,
           eta = p.eta;
  auto rho = [&](cx u) { return e.log_deriv_sigma(u); };
  if (fam == BetheFamily::One) {
    return rho(l2 + xb + v + eta) - rho(l2 + xi - v - eta) -
           rho(l1 + xb - v - eta) + rho(l1 + xi + v + eta) +
           rho(l2 + xb - v) - rho(l2 + xi + v) - rho(l1 + xb + v) +
           rho(l1 + xi - v);
  }
  return -rho(l2 + xb - v - eta) + rho(l2 + xi + v + eta) +
         rho(l1 + xb + v + eta) - rho(l1 + xi - v - eta) -
         rho(l2 + xb + v) + rho(l2 + xi - v) + rho(l1 + xb - v) -
         rho(l1 + xi + v);
}

cx inhomogeneity_block(const ModelParams& p, const Elliptic& e, cx v) {
  cx r{1.0, 0.0};
  for (cx z : p.z) {
    r *= checked_div(e.sigma(v + z) * e.sigma(v - z),
                     e.sigma(v + z + p.eta) * e.sigma(v - z + p.eta),
                     "inhomogeneity block");
  }
  return r;
}

cx inhomogeneity_log_deriv(const ModelParams& p, const Elliptic& e, cx v) {
  auto rho = [&](cx u) { return e.log_deriv_sigma(u); };
  cx r{0.0, 0.0};
  for (cx z : p.z) {
    r += rho(v + z) + rho(v - z) - rho(v + z + p.eta) - rho(v - z + p.eta);
  }
  return r;
}

std::pair<long long, long long> root_key(cx w) {
  return {std::llround(w.imag() * 1e9), std::llround(w.real() * 1e9)};
}

// Canonical representative of the orbit of v under whole-period shifts and
// the reflection v -> -v - eta; the equations, states and eigenvalues are
// invariant under all of these.
cx canonical_root(cx v, cx eta, cx tau) {
  const cx a = lattice_reduce(v, tau);
  const cx b = lattice_reduce(-v - eta, tau);
  return root_key(b) < root_key(a) ? b : a;
}

std::vector<cx> canonical_set(std::vector<cx> v, cx eta, cx tau) {
  for (cx& r : v) r = canonical_root(r, eta, tau);
  std::sort(v.begin(), v.end(),
            [](cx a, cx b) { return root_key(a) < root_key(b); });
  return v;
}

bool separated(const std::vector<cx>& v, cx eta, cx tau, double min_sep) {
  for (size_t a = 0; a < v.size(); ++a) {
    for (size_t b = a + 1; b < v.size(); ++b) {
      if (lattice_distance(v[a] - v[b], tau) <= min_sep) return false;
      if (lattice_distance(v[a] + v[b] + eta, tau) <= min_sep) return false;
    }
  }
  return true;
}

// Compares canonical sets; roots near a cell edge may canonicalize to the
// opposite edge, so the comparison is lattice-aware and flip-aware.
bool same_set(const std::vector<cx>& a, const std::vector<cx>& b, cx eta,
              cx tau, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (lattice_distance(a[i] - b[i], tau) > tol &&
        lattice_distance(a[i] + b[i] + eta, tau) > tol) {
      return false;
    }
  }
  return true;
}

}  // namespace

BetheFamily family_of(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::I_I:
      return BetheFamily::One;
    case ScalarKind::II_II:
      return BetheFamily::Two;
    default:
      throw ConfigError("mixed scalar-product kinds carry no on-shell family");
  }
}

cx bae_ratio(const ModelParams& p, BetheFamily fam, int j,
             const std::vector<cx>& v) {
  const Elliptic e = p.ell();
  const cx vj = v[static_cast<size_t>(j)];
  cx r = boundary_ratio(p, e, fam, vj) * inhomogeneity_block(p, e, vj);
  for (size_t k = 0; k < v.size(); ++k) {
    if (static_cast<int>(k) == j) continue;
    r *= checked_div(
        e.sigma(vj + v[k] + 2.0 * p.eta) * e.sigma(vj - v[k] + p.eta),
        e.sigma(vj + v[k]) * e.sigma(vj - v[k] - p.eta), "pair block");
  }
  return r;
}

cx bae_log_deriv(const ModelParams& p, BetheFamily fam, int j, int alpha,
                 const std::vector<cx>& v) {
  const Elliptic e = p.ell();
  auto rho = [&](cx u) { return e.log_deriv_sigma(u); };
  const cx vj = v[static_cast<size_t>(j)];
  if (alpha != j) {
    const cx va = v[static_cast<size_t>(alpha)];
    return rho(vj + va + 2.0 * p.eta) - rho(vj - va + p.eta) -
           rho(vj + va) + rho(vj - va - p.eta);
  }
  cx r = boundary_log_deriv(p, e, fam, vj) +
         inhomogeneity_log_deriv(p, e, vj);
  for (size_t k = 0; k < v.size(); ++k) {
    if (static_cast<int>(k) == j) continue;
    r += rho(vj + v[k] + 2.0 * p.eta) + rho(vj - v[k] + p.eta) -
         rho(vj + v[k]) - rho(vj - v[k] - p.eta);
  }
  return r;
}

Vec bae_residual(const ModelParams& p, BetheFamily fam,
                 const std::vector<cx>& v) {
  Vec f(static_cast<Eigen::Index>(v.size()));
  for (size_t j = 0; j < v.size(); ++j) {
    f(static_cast<Eigen::Index>(j)) =
        std::log(bae_ratio(p, fam, static_cast<int>(j), v));
  }
  return f;
}

double bae_residual_norm(const ModelParams& p, BetheFamily fam,
                         const std::vector<cx>& v) {
  if (v.empty()) return 0.0;
  return bae_residual(p, fam, v).cwiseAbs().maxCoeff();
}

Mat bae_jacobian(const ModelParams& p, BetheFamily fam,
                 const std::vector<cx>& v) {
  const int m = static_cast<int>(v.size());
  Mat jac(m, m);
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < m; ++a) {
      jac(j, a) = bae_log_deriv(p, fam, j, a, v);
    }
  }
  return jac;
}

std::vector<BetheRoots> solve_bae(const ModelParams& p, BetheFamily fam,
                                  int M, const SolverConfig& cfg) {
  if (M < 0) throw ConfigError("negative magnon number");
  std::vector<BetheRoots> found;
  if (M == 0) {
    // No equations: the reference state itself, with an empty root tuple.
    found.push_back(BetheRoots{{}, 0.0, 0});
    return found;
  }

  std::mt19937 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  const double im_tau = p.tau.imag();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  auto draw_tuple = [&]() {
    std::vector<cx> x;
    for (int attempt = 0; attempt < 50; ++attempt) {
      x.clear();
      for (int i = 0; i < M; ++i) {
        x.push_back(cx(unif(rng), unif(rng) * im_tau));
      }
      if (!separated(x, p.eta, p.tau, 0.05)) continue;
      try {
        bae_residual(p, fam, x);
        return x;
      } catch (const NumericalError&) {
      }
    }
    x.clear();
    return x;
  };

  for (int s = 0; s < cfg.seeds; ++s) {
    std::vector<cx> x = draw_tuple();
    if (x.empty()) continue;

    Vec f;
    double res = kInf;
    try {
      f = bae_residual(p, fam, x);
      res = f.cwiseAbs().maxCoeff();
    } catch (const NumericalError&) {
      continue;
    }

    int it = 0;
    for (; it < cfg.max_iter && res >= cfg.tol; ++it) {
      Mat jac;
      try {
        jac = bae_jacobian(p, fam, x);
      } catch (const NumericalError&) {
        break;
      }
      const Vec delta = jac.partialPivLu().solve(-f);
      if (!delta.allFinite()) break;

      bool moved = false;
      double step = 1.0;
      for (int h = 0; h < 24 && step > 1e-8; ++h, step *= cfg.damping) {
        std::vector<cx> x2 = x;
        for (int i = 0; i < M; ++i) {
          x2[static_cast<size_t>(i)] += step * delta(i);
        }
        try {
          const Vec f2 = bae_residual(p, fam, x2);
          const double res2 = f2.cwiseAbs().maxCoeff();
          if (res2 < res) {
            x = std::move(x2);
            f = f2;
            res = res2;
            moved = true;
            break;
          }
        } catch (const NumericalError&) {
        }
      }
      if (!moved) break;
    }
    if (!(res < cfg.tol)) continue;
    if (!separated(x, p.eta, p.tau, cfg.min_separation)) continue;

    try {
      const Mat jac = bae_jacobian(p, fam, x);
      if (std::abs(jac.partialPivLu().determinant()) <= 1e-10) continue;
    } catch (const NumericalError&) {
      continue;
    }

    std::vector<cx> cv = canonical_set(x, p.eta, p.tau);
    double cres;
    try {
      cres = bae_residual_norm(p, fam, cv);
    } catch (const NumericalError&) {
      continue;
    }
    if (cres >= 100.0 * cfg.tol) continue;

    bool duplicate = false;
    for (const BetheRoots& r : found) {
      if (same_set(r.v, cv, p.eta, p.tau, cfg.dedup_tol)) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    found.push_back(BetheRoots{std::move(cv), cres, it});
  }

  std::sort(found.begin(), found.end(),
            [](const BetheRoots& a, const BetheRoots& b) {
              for (size_t i = 0; i < a.v.size(); ++i) {
                const auto ka = root_key(a.v[i]);
                const auto kb = root_key(b.v[i]);
                if (ka != kb) return ka < kb;
              }
              return false;
            });
  return found;
}

cx transfer_eigenvalue(const ModelParams& p, BetheFamily fam, cx u,
                       const std::vector<cx>& v) {
  const Elliptic e = p.ell();
  const cx l1 = p.lambda1, l2 = p.lambda2, xi = p.xi, xb = p.xibar,
           eta = p.eta;
  cx t1, t2;
  if (fam == BetheFamily::One) {
    t1 = checked_div(e.sigma(l2 + xb - u) * e.sigma(l1 + xb + u) *
                         e.sigma(l1 + xi - u) * e.sigma(2.0 * u + 2.0 * eta),
                     e.sigma(l2 + xb - u - eta) * e.sigma(l1 + xb - u - eta) *
                         e.sigma(l1 + xi + u) * e.sigma(2.0 * u + eta),
                     "eigenvalue dressing");
    t2 = checked_div(e.sigma(l2 + xb + u + eta) * e.sigma(l1 + xi + u + eta) *
                         e.sigma(l2 + xi - u - eta) * e.sigma(2.0 * u),
                     e.sigma(l2 + xb - u - eta) * e.sigma(l1 + xi + u) *
                         e.sigma(l2 + xi + u) * e.sigma(2.0 * u + eta),
                     "eigenvalue dressing");
  } else {
    t1 = checked_div(e.sigma(2.0 * u + 2.0 * eta) * e.sigma(l1 + xb - u) *
                         e.sigma(l2 + xb + u) * e.sigma(l2 + xi - u),
                     e.sigma(2.0 * u + eta) * e.sigma(l1 + xb - u - eta) *
                         e.sigma(l2 + xb - u - eta) * e.sigma(l2 + xi + u),
                     "eigenvalue dressing");
    t2 = checked_div(e.sigma(2.0 * u) * e.sigma(l1 + xb + u + eta) *
                         e.sigma(l2 + xi + u + eta) * e.sigma(l1 + xi - u - eta),
                     e.sigma(2.0 * u + eta) * e.sigma(l1 + xb - u - eta) *
                         e.sigma(l2 + xi + u) * e.sigma(l1 + xi + u),
                     "eigenvalue dressing");
  }
  for (cx vk : v) {
    t1 *= checked_div(e.sigma(u + vk) * e.sigma(u - vk - eta),
                      e.sigma(u + vk + eta) * e.sigma(u - vk),
                      "eigenvalue roots");
    t2 *= checked_div(e.sigma(u + vk + 2.0 * eta) * e.sigma(u - vk + eta),
                      e.sigma(u + vk + eta) * e.sigma(u - vk),
                      "eigenvalue roots");
  }
  for (cx zk : p.z) {
    t2 *= checked_div(e.sigma(u + zk) * e.sigma(u - zk),
                      e.sigma(u + zk + eta) * e.sigma(u - zk + eta),
                      "eigenvalue inhomogeneities");
  }
  return t1 + t2;
}

}  // namespace oxyz
