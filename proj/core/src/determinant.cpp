#include "openxyz/determinant.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace oxyz {

namespace {

constexpr double kOnShellTol = 1e-8;
constexpr double kRootSeparation = 1e-6;

// Log-space product accumulator: prefactors are long products of sigma
// ratios, summed as logarithms and exponentiated once.
class LogProd {
 public:
  void mul(cx x) {
    if (std::abs(x) == 0.0) {
      zero_ = true;
      return;
    }
    acc_ += std::log(x);
  }

  void div(cx x, const char* what) {
    if (std::abs(x) <= kPoleThreshold) {
      throw NearPole(std::string(what) + ": sigma denominator at pole");
    }
    acc_ -= std::log(x);
  }

  void div_distinct(cx x, const char* what) {
    if (std::abs(x) <= kRootSeparation) {
      throw CollidingArguments(std::string(what) +
                               ": arguments too close for the formula");
    }
    acc_ -= std::log(x);
  }

  cx value() const { return zero_ ? cx{0.0, 0.0} : std::exp(acc_); }

 private:
  cx acc_{0.0, 0.0};
  bool zero_ = false;
};

cx checked_div(cx num, cx den, const char* what) {
  if (std::abs(den) <= kPoleThreshold) {
    throw NearPole(std::string(what) + ": sigma denominator at pole");
  }
  return num / den;
}

DetValue det_with_condition(const Mat& m, cx prefactor) {
  Eigen::PartialPivLU<Mat> lu(m);
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  double cond = std::numeric_limits<double>::infinity();
  if (s.size() > 0 && s(s.size() - 1) > 0.0) cond = s(0) / s(s.size() - 1);
  return DetValue{prefactor * lu.determinant(), cond};
}

void require_on_shell(const ModelParams& p, ScalarKind kind,
                      const std::vector<cx>& v, bool force,
                      const char* what) {
  const double res = bae_residual_norm(p, family_of(kind), v);
  if (!force && res >= kOnShellTol) {
    throw OffShellRoots(std::string(what) + ": equation residual " +
                        std::to_string(res));
  }
}

void require_separated(const ModelParams& p, const std::vector<cx>& v,
                       const char* what) {
  for (size_t a = 0; a < v.size(); ++a) {
    // A root at a reflection-symmetric point (2v + eta on the lattice)
    // makes the doubling blocks singular.
    if (lattice_distance(2.0 * v[a] + p.eta, p.tau) <= kRootSeparation) {
      throw CollidingRoots(std::string(what) +
                           ": root at a reflection-symmetric point");
    }
    for (size_t b = a + 1; b < v.size(); ++b) {
      if (lattice_distance(v[a] - v[b], p.tau) <= kRootSeparation ||
          lattice_distance(v[a] + v[b] + p.eta, p.tau) <= kRootSeparation) {
        throw CollidingRoots(std::string(what) + ": roots too close");
      }
    }
  }
}

// Product of the scale factors of the 2M creation operators in a merged
// ladder; the same product shows up in the partition functions, the mixed
// scalar products and the norms. Family one steps lambda12 through
// 2j*eta for j = M..-(M-1); family two steps lambda21 through 2k*eta for
// k = -M..M-1. Denominators carry the operators' -eta*N/2 offset.
void ladder_prefactor(LogProd& lp, const Elliptic& e, BetheFamily fam,
                      cx l12, cx eta, int m) {
  const double md = static_cast<double>(m);
  if (fam == BetheFamily::One) {
    for (int j = -(m - 1); j <= m; ++j) {
      const double jd = static_cast<double>(j);
      lp.mul(e.sigma(l12 + 2.0 * jd * eta));
      lp.div(e.sigma(l12 + (jd - md) * eta), "ladder prefactor");
    }
  } else {
    const cx l21 = -l12;
    for (int k = -m; k <= m - 1; ++k) {
      const double kd = static_cast<double>(k);
      lp.mul(e.sigma(l21 + 2.0 * kd * eta));
      lp.div(e.sigma(l21 + (kd + md) * eta), "ladder prefactor");
    }
  }
}

}  // namespace

Mat partition_matrix(const ModelParams& p, ScalarKind kind,
                     const std::vector<cx>& ubar) {
  const Elliptic e = p.ell();
  const int n = static_cast<int>(ubar.size());
  const cx l1 = p.lambda1, l2 = p.lambda2, eta = p.eta;
  Mat m(n, n);
  for (int a = 0; a < n; ++a) {
    const cx ua = ubar[static_cast<size_t>(a)];
    for (int j = 0; j < n; ++j) {
      const cx zj = p.z[static_cast<size_t>(j)];
      cx num, den;
      if (kind == ScalarKind::I_II) {
        num = e.sigma(eta) * e.sigma(l1 + p.xi - zj) *
              e.sigma(l2 + p.xi + zj) * e.sigma(2.0 * ua);
        den = e.sigma(ua - zj) * e.sigma(ua + zj + eta) *
              e.sigma(l1 + p.xi + ua) * e.sigma(l2 + p.xi + ua) *
              e.sigma(ua - zj + eta) * e.sigma(ua + zj);
      } else if (kind == ScalarKind::II_I) {
        num = e.sigma(eta) * e.sigma(l2 + p.xibar - zj) *
              e.sigma(l1 + p.xibar + zj) * e.sigma(2.0 * ua + 2.0 * eta);
        den = e.sigma(ua - zj) * e.sigma(ua + zj + eta) *
              e.sigma(l2 + p.xibar - ua - eta) *
              e.sigma(l1 + p.xibar - ua - eta) * e.sigma(ua - zj + eta) *
              e.sigma(ua + zj);
      } else {
        throw ConfigError("partition matrix needs a mixed kind");
      }
      m(a, j) = checked_div(num, den, "partition matrix entry");
    }
  }
  return m;
}

DetValue partition_function(const ModelParams& p, ScalarKind kind,
                            const std::vector<cx>& ubar) {
  const int n = p.N();
  if (static_cast<int>(ubar.size()) != n || n < 2 || n % 2 != 0) {
    throw ConfigError("partition function needs N = 2M parameters");
  }
  const Elliptic e = p.ell();
  const int m = n / 2;
  const cx eta = p.eta;
  const cx l12 = p.lambda1 - p.lambda2;

  LogProd lp;
  ladder_prefactor(lp, e,
                   kind == ScalarKind::I_II ? BetheFamily::One
                                            : BetheFamily::Two,
                   l12, eta, m);

  // Crossing product over all (parameter, site) pairs, matching the net
  // per-operator site factors of the two polarization-free families.
  for (cx ua : ubar) {
    for (cx zl : p.z) {
      if (kind == ScalarKind::I_II) {
        lp.mul(e.sigma(ua + zl));
        lp.div(e.sigma(ua + zl + eta), "partition crossing product");
      } else {
        lp.mul(e.sigma(ua - zl));
        lp.div(e.sigma(ua - zl + eta), "partition crossing product");
      }
    }
  }

  for (cx ua : ubar) {
    for (cx zi : p.z) {
      if (kind == ScalarKind::I_II) {
        lp.mul(e.sigma(ua - zi));
        lp.mul(e.sigma(ua + zi + eta));
      } else {
        lp.mul(e.sigma(ua + zi));
        lp.mul(e.sigma(ua - zi + eta));
      }
    }
  }

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < a; ++b) {
      lp.div_distinct(e.sigma(ubar[static_cast<size_t>(a)] -
                              ubar[static_cast<size_t>(b)]),
                      "partition parameter difference");
      lp.div(e.sigma(ubar[static_cast<size_t>(a)] +
                     ubar[static_cast<size_t>(b)] + eta),
             "partition parameter sum");
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const cx zk = p.z[static_cast<size_t>(k)];
      const cx zl = p.z[static_cast<size_t>(l)];
      lp.div_distinct(e.sigma(zk - zl), "partition site difference");
      lp.div(e.sigma(zk + zl), "partition site sum");
    }
  }

  return det_with_condition(partition_matrix(p, kind, ubar), lp.value());
}

cx boundary_coeff(const ModelParams& p, int which, cx u) {
  const Elliptic e = p.ell();
  const cx l1 = p.lambda1, l2 = p.lambda2, xi = p.xi, xb = p.xibar,
           eta = p.eta;
  switch (which) {
    case 1:
      return e.sigma(l2 + xb + u + eta) * e.sigma(l2 + xi - u - eta) *
             e.sigma(l1 + xb - u - eta) * e.sigma(l1 + xi + u + eta);
    case 2:
      return e.sigma(l2 + xb - u) * e.sigma(l2 + xi + u) *
             e.sigma(l1 + xb + u) * e.sigma(l1 + xi - u);
    case 3:
      return e.sigma(l2 + xb - u - eta) * e.sigma(l2 + xi + u + eta) *
             e.sigma(l1 + xb + u + eta) * e.sigma(l1 + xi - u - eta);
    case 4:
      return e.sigma(l2 + xb + u) * e.sigma(l2 + xi - u) *
             e.sigma(l1 + xb - u) * e.sigma(l1 + xi + u);
    default:
      throw ConfigError("boundary coefficient index must be 1..4");
  }
}

cx h_function(const ModelParams& p, ScalarKind kind, int j, cx u,
              const std::vector<cx>& v) {
  const Elliptic e = p.ell();
  const cx eta = p.eta;
  const cx vj = v[static_cast<size_t>(j)];
  const cx den = e.sigma(u - vj) * e.sigma(u + vj + eta) *
                 e.sigma(2.0 * u + eta);
  cx t1, t2;
  if (kind == ScalarKind::I_I) {
    t1 = boundary_coeff(p, 1, u);
    t2 = boundary_coeff(p, 2, u);
    for (cx zl : p.z) {
      t1 *= checked_div(e.sigma(u + zl), e.sigma(u + zl + eta),
                        "h-function site product");
      t2 *= checked_div(e.sigma(u - zl + eta), e.sigma(u - zl),
                        "h-function site product");
    }
    for (size_t k = 0; k < v.size(); ++k) {
      if (static_cast<int>(k) == j) continue;
      t1 *= e.sigma(u + v[k] + 2.0 * eta) * e.sigma(u - v[k] + eta);
      t2 *= e.sigma(u + v[k]) * e.sigma(u - v[k] - eta);
    }
  } else if (kind == ScalarKind::II_II) {
    t1 = boundary_coeff(p, 3, u);
    t2 = boundary_coeff(p, 4, u);
    for (cx zl : p.z) {
      t1 *= checked_div(e.sigma(u - zl), e.sigma(u - zl + eta),
                        "h-function site product");
      t2 *= checked_div(e.sigma(u + zl + eta), e.sigma(u + zl),
                        "h-function site product");
    }
    for (size_t k = 0; k < v.size(); ++k) {
      if (static_cast<int>(k) == j) continue;
      t1 *= e.sigma(v[k] + u + 2.0 * eta) * e.sigma(v[k] - u - eta);
      t2 *= e.sigma(v[k] + u) * e.sigma(v[k] - u + eta);
    }
  } else {
    throw ConfigError("h-function needs an on-shell kind");
  }
  return checked_div(t1 - t2, den, "h-function denominator");
}

Mat scalar_matrix(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& u, const std::vector<cx>& v) {
  const Elliptic e = p.ell();
  const int m = static_cast<int>(u.size());
  const cx l1 = p.lambda1, l2 = p.lambda2, eta = p.eta;
  Mat mat(m, m);
  for (int a = 0; a < m; ++a) {
    const cx ua = u[static_cast<size_t>(a)];
    for (int j = 0; j < m; ++j) {
      const cx vj = v[static_cast<size_t>(j)];
      const cx h = h_function(p, kind, j, ua, v);
      cx num, den;
      if (kind == ScalarKind::I_I) {
        num = e.sigma(eta) * e.sigma(2.0 * ua) *
              e.sigma(2.0 * vj + 2.0 * eta) * h;
        den = e.sigma(l1 + p.xi + ua) * e.sigma(l2 + p.xi + ua) *
              e.sigma(l2 + p.xibar - vj - eta) *
              e.sigma(l1 + p.xibar - vj - eta);
      } else {
        num = e.sigma(eta) * e.sigma(2.0 * ua + 2.0 * eta) *
              e.sigma(2.0 * vj) * h;
        den = e.sigma(l2 + p.xibar - ua - eta) *
              e.sigma(l1 + p.xibar - ua - eta) *
              e.sigma(l2 + p.xi + vj) * e.sigma(l1 + p.xi + vj);
      }
      mat(a, j) = checked_div(num, den, "scalar matrix entry");
    }
  }
  return mat;
}

DetValue scalar_product_det(const ModelParams& p, ScalarKind kind,
                            const std::vector<cx>& u,
                            const std::vector<cx>& v, bool force) {
  const int m = p.M();
  if (static_cast<int>(u.size()) != m || static_cast<int>(v.size()) != m) {
    throw ConfigError("scalar product needs M parameters on each side");
  }
  require_separated(p, v, "scalar product");
  require_on_shell(p, kind, v, force, "scalar product");

  const Elliptic e = p.ell();
  const cx eta = p.eta;
  const cx l12 = p.lambda1 - p.lambda2;

  LogProd lp;
  ladder_prefactor(lp, e, family_of(kind), l12, eta, m);
  for (int k = 1; k <= m; ++k) {
    const cx uk = u[static_cast<size_t>(k - 1)];
    const cx vk = v[static_cast<size_t>(k - 1)];
    for (cx zl : p.z) {
      if (kind == ScalarKind::I_I) {
        lp.mul(e.sigma(uk - zl));
        lp.mul(e.sigma(vk - zl));
        lp.div(e.sigma(uk - zl + eta), "scalar site product");
        lp.div(e.sigma(vk - zl + eta), "scalar site product");
      } else {
        lp.mul(e.sigma(uk + zl));
        lp.mul(e.sigma(vk + zl));
        lp.div(e.sigma(uk + zl + eta), "scalar site product");
        lp.div(e.sigma(vk + zl + eta), "scalar site product");
      }
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      lp.div_distinct(e.sigma(u[static_cast<size_t>(a)] -
                              u[static_cast<size_t>(b)]),
                      "scalar parameter difference");
      lp.div(e.sigma(u[static_cast<size_t>(a)] + u[static_cast<size_t>(b)] +
                     eta),
             "scalar parameter sum");
      lp.div_distinct(e.sigma(v[static_cast<size_t>(b)] -
                              v[static_cast<size_t>(a)]),
                      "scalar root difference");
      lp.div(e.sigma(v[static_cast<size_t>(b)] + v[static_cast<size_t>(a)] +
                     eta),
             "scalar root sum");
    }
  }

  return det_with_condition(scalar_matrix(p, kind, u, v), lp.value());
}

Mat gaudin_matrix(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& v) {
  const Elliptic e = p.ell();
  const BetheFamily fam = family_of(kind);
  const int m = static_cast<int>(v.size());
  const cx l1 = p.lambda1, l2 = p.lambda2, eta = p.eta;
  Mat mat(m, m);
  for (int a = 0; a < m; ++a) {
    const cx va = v[static_cast<size_t>(a)];
    cx site{1.0, 0.0};
    for (cx zl : p.z) {
      if (kind == ScalarKind::I_I) {
        site *= checked_div(e.sigma(va - zl + eta), e.sigma(va - zl),
                            "norm matrix site product");
      } else {
        site *= checked_div(e.sigma(va - zl), e.sigma(va - zl + eta),
                            "norm matrix site product");
      }
    }
    for (int j = 0; j < m; ++j) {
      const cx vj = v[static_cast<size_t>(j)];
      cx num, den;
      if (kind == ScalarKind::I_I) {
        num = e.sigma(eta) * e.sigma(l2 + p.xibar - va) *
              e.sigma(l1 + p.xibar + va) * e.sigma(l1 + p.xi - va);
        den = e.sigma(l1 + p.xi + va) * e.sigma(l2 + p.xibar - vj - eta) *
              e.sigma(l1 + p.xibar - vj - eta);
      } else {
        num = e.sigma(eta) * e.sigma(l2 + p.xi + va + eta) *
              e.sigma(l1 + p.xibar + va + eta) *
              e.sigma(l1 + p.xi - va - eta);
        den = e.sigma(l1 + p.xibar - va - eta) * e.sigma(l2 + p.xi + vj) *
              e.sigma(l1 + p.xi + vj);
      }
      cx entry = checked_div(num, den, "norm matrix boundary block");
      if (kind == ScalarKind::I_I) {
        entry *= checked_div(
            e.sigma(2.0 * va) * e.sigma(2.0 * vj + 2.0 * eta),
            e.sigma(2.0 * va + eta) * e.sigma(2.0 * vj + eta),
            "norm matrix doubling block");
      } else {
        entry *= checked_div(
            e.sigma(2.0 * va + 2.0 * eta) * e.sigma(2.0 * vj),
            e.sigma(2.0 * va + eta) * e.sigma(2.0 * vj + eta),
            "norm matrix doubling block");
      }
      entry *= site;
      entry *= bae_log_deriv(p, fam, j, a, v);
      mat(a, j) = entry;
    }
  }
  return mat;
}

DetValue norm_det(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& v, bool force) {
  if (static_cast<int>(v.size()) != p.M()) {
    throw ConfigError("norm needs M roots");
  }
  require_separated(p, v, "norm");
  require_on_shell(p, kind, v, force, "norm");

  const Elliptic e = p.ell();
  const int m = static_cast<int>(v.size());
  const cx eta = p.eta;
  const cx l12 = p.lambda1 - p.lambda2;

  LogProd lp;
  ladder_prefactor(lp, e, family_of(kind), l12, eta, m);
  // Each diagonal 0/0 resolution in the coincidence limit divides out one
  // slope sigma'(0); the derivative entries of the matrix are plain
  // d/dv log terms, so the powers sit here.
  for (int k = 0; k < m; ++k) {
    lp.div(e.sigma_prime0(), "norm slope factor");
  }
  for (int k = 1; k <= m; ++k) {
    const cx vk = v[static_cast<size_t>(k - 1)];
    for (cx zl : p.z) {
      if (kind == ScalarKind::I_I) {
        lp.mul(e.sigma(vk - zl));
        lp.mul(e.sigma(vk - zl));
        lp.div(e.sigma(vk - zl + eta), "norm site product");
        lp.div(e.sigma(vk - zl + eta), "norm site product");
      } else {
        lp.mul(e.sigma(vk + zl));
        lp.mul(e.sigma(vk + zl));
        lp.div(e.sigma(vk + zl + eta), "norm site product");
        lp.div(e.sigma(vk + zl + eta), "norm site product");
      }
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      const cx va = v[static_cast<size_t>(a)];
      const cx vb = v[static_cast<size_t>(b)];
      if (kind == ScalarKind::I_I) {
        lp.mul(e.sigma(va + vb));
      } else {
        lp.mul(e.sigma(va + vb + 2.0 * eta));
      }
      lp.mul(e.sigma(va - vb - eta));
      lp.div_distinct(e.sigma(va - vb), "norm root difference");
      lp.div(e.sigma(va + vb + eta), "norm root sum");
    }
  }

  return det_with_condition(gaudin_matrix(p, kind, v), lp.value());
}

bool roots_generic(const ModelParams& p, const std::vector<cx>& v) {
  try {
    require_separated(p, v, "roots");
  } catch (const CollidingRoots&) {
    return false;
  }
  return true;
}

}  // namespace oxyz
