#include "openxyz/model.hpp"

#include <cmath>
#include <sstream>

namespace oxyz {

ModelParams ModelParams::fixture(int sites) {
  ModelParams p;
  p.tau = cx(0.0, 1.0);
  p.eta = cx(0.37, 0.04);
  p.lambda1 = cx(0.81, 0.11);
  p.lambda2 = cx(-0.42, 0.23);
  p.xi = cx(0.55, -0.08);
  p.xibar = cx(0.29, 0.17);
  p.z.resize(sites);
  for (int k = 1; k <= sites; ++k) {
    p.z[k - 1] = cx(0.1 * k, 0.03 * k);
  }
  return p;
}

std::vector<std::string> ModelParams::validate() const {
  std::vector<std::string> bad;
  const Elliptic e(tau);
  const double tol = 1e-8;
  auto check = [&](cx u, const std::string& what) {
    if (std::abs(e.sigma(u)) <= tol) {
      std::ostringstream os;
      os << "sigma ~ 0 at " << what;
      bad.push_back(os.str());
    }
  };
  auto tag = [](const char* pre, int k, const char* post) {
    std::ostringstream os;
    os << pre << k << post;
    return os.str();
  };

  if (N() % 2 != 0 || N() == 0) bad.push_back("N must be positive and even");
  if (!(tau.imag() >= 0.2)) bad.push_back("Im(tau) must be >= 0.2");
  if (std::abs(e.sigma(eta)) <= tol) bad.push_back("sigma(eta) ~ 0");

  // Weight differences along the eta ladder reachable at chain scale: the
  // face R-matrix and intertwiner inverses see lambda12 + k*eta for
  // |k| <= N+2.
  const cx l12 = lambda1 - lambda2;
  for (int k = -(N() + 2); k <= N() + 2; ++k) {
    check(l12 + static_cast<double>(k) * eta,
          tag("lambda12 + ", k, " eta (face weight ladder)"));
  }

  // Boundary combinations entering K matrices and their face diagonals.
  check(lambda1 + xi, "lambda1 + xi");
  check(lambda2 + xi, "lambda2 + xi");
  check(lambda1 + xibar, "lambda1 + xibar");
  check(lambda2 + xibar, "lambda2 + xibar");
  check(lambda1 + lambda2 - 0.5, "lambda1 + lambda2 - 1/2");
  check(lambda1 + lambda2 + eta - 0.5, "lambda1 + lambda2 + eta - 1/2");

  // Inhomogeneity differences/sums used by R products and determinants.
  for (int i = 0; i < N(); ++i) {
    for (int j = 0; j < N(); ++j) {
      if (i == j) continue;
      check(z[i] - z[j], tag("z", i + 1, tag(" - z", j + 1, "").c_str()));
      check(z[i] - z[j] + eta, tag("z", i + 1, tag(" - z", j + 1, " + eta").c_str()));
    }
    check(z[i] + z[i], tag("2 z", i + 1, ""));
    check(2.0 * z[i] + eta, tag("2 z", i + 1, " + eta"));
    // Intertwiner determinant scale sigma(z_k + m1 + m2 - 1/2) along the
    // reference-state ladders, where m1 + m2 = lambda1 + lambda2 stays fixed.
    check(z[i] + lambda1 + lambda2 - 0.5,
          tag("z", i + 1, " + lambda1 + lambda2 - 1/2"));
  }
  return bad;
}

void ModelParams::require_valid() const {
  auto bad = validate();
  if (!bad.empty()) {
    std::string msg = "model parameters fail genericity checks:";
    for (const auto& b : bad) msg += "\n  " + b;
    throw ConfigError(msg);
  }
}

}  // namespace oxyz
