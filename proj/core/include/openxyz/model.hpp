#pragma once

#include <string>
#include <vector>

#include "openxyz/elliptic.hpp"

namespace oxyz {

// Dynamical face weight m = (m1, m2). Shifts follow the fundamental vectors
// 1^ = (1/2, -1/2) and 2^ = (-1/2, 1/2), so 1^ + 2^ = 0 and the combination
// m + c*j^ moves the two components by +-c/2.
struct Weight {
  cx m1{};
  cx m2{};

  cx m12() const { return m1 - m2; }
  cx m21() const { return m2 - m1; }
  cx component(int i) const { return i == 1 ? m1 : m2; }

  // m + c * j^ for j in {1,2}.
  Weight shifted(int j, cx c) const {
    const cx half = 0.5 * c;
    return j == 1 ? Weight{m1 + half, m2 - half} : Weight{m1 - half, m2 + half};
  }
};

inline Weight operator+(const Weight& a, const Weight& b) {
  return {a.m1 + b.m1, a.m2 + b.m2};
}
inline Weight operator-(const Weight& a, const Weight& b) {
  return {a.m1 - b.m1, a.m2 - b.m2};
}

// Global parameter set for a chain of N = 2M sites.
struct ModelParams {
  cx tau{0.0, 1.0};
  cx eta{};
  cx lambda1{};
  cx lambda2{};
  cx xi{};
  cx xibar{};
  std::vector<cx> z;

  int N() const { return static_cast<int>(z.size()); }
  int M() const { return N() / 2; }

  Weight lambda() const { return {lambda1, lambda2}; }
  Elliptic ell() const { return Elliptic(tau); }

  // Pinned generic parameter set used by tests and as the CLI default.
  static ModelParams fixture(int sites);

  // Genericity scan: every sigma denominator reachable at the working scale
  // (R-matrix shifts, boundary combinations, intertwiner determinants along
  // the +-(N+2) eta weight ladder) must stay above the pole threshold.
  // Returns the list of violations; empty means the parameter set is usable.
  std::vector<std::string> validate() const;

  // Convenience: throws ConfigError when validate() reports problems.
  void require_valid() const;
};

}  // namespace oxyz
