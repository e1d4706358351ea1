#pragma once

#include <complex>

#include "openxyz/errors.hpp"

namespace oxyz {

using cx = std::complex<double>;

// Characteristics of the theta series
//   theta[a;b](u,tau) = sum_n exp{ i*pi*[ (n+a)^2 tau + 2 (n+a)(u+b) ] }.
struct ThetaChar {
  double a;
  double b;
};

// Label for the four half-period companions of sigma; (0,0) is sigma itself.
struct SigmaLabel {
  int alpha1;
  int alpha2;
};

// Truncated theta series with quasi-periodic reduction of u into the
// fundamental cell. Truncation sums n in [-N,N], N in {12,24,48,96}, stopping
// once the last added pair is below 1e-16 of the partial sum.
cx theta(ThetaChar ch, cx u, cx tau);

// theta'(u)/theta(u) for the same series (term-wise differentiated).
cx theta_dlog(ThetaChar ch, cx u, cx tau);

// Evaluation context fixing the modular parameter. Requires Im(tau) >= 0.2.
class Elliptic {
 public:
  explicit Elliptic(cx tau);

  cx tau() const { return tau_; }

  // sigma(u) = theta[1/2;1/2](u,tau), the odd Jacobi theta_1 up to convention.
  cx sigma(cx u) const;

  // sigma_alpha(u) = theta[(1+a1)/2;(1+a2)/2](u,tau).
  cx sigma_alpha(SigmaLabel a, cx u) const;

  // theta_j(u) = theta[(1-j)/2;1/2](u,2tau). Accepts j in {0,1,2}; j=0 and
  // j=2 coincide (characteristics differ by a full period in a).
  cx theta_j(int j, cx u) const;

  // sigma'(u)/sigma(u). Throws NearPole if |sigma| <= 1e-10 in the cell.
  cx log_deriv_sigma(cx u) const;

  // sigma'(0), the slope at the origin zero. This convention does not
  // normalize it to 1, so limit formulas resolving 0/0 ratios against
  // sigma(u - v) carry explicit powers of this constant.
  cx sigma_prime0() const;

  // Scale-free residual of the four-term product identity
  // s(u+x)s(u-x)s(v+y)s(v-y) - s(u+y)s(u-y)s(v+x)s(v-x)
  //   = s(u+v)s(u-v)s(x+y)s(x-y).
  double riemann_residual(cx u, cx v, cx x, cx y) const;

  // Relative deviation of sigma(u) from -2 exp(i*pi*tau/4) sin(pi*u); 0 when
  // both sides vanish. Meaningful for Im(tau) >= 4.
  double trig_limit_check(cx u) const;

 private:
  cx tau_;
};

constexpr double kPoleThreshold = 1e-10;

// Distance from w to the nearest point of the period lattice Z + tau*Z,
// well defined for arguments of any magnitude.
double lattice_distance(cx w, cx tau);

// Representative of w in the fundamental cell [0,1) x [0, Im tau) (sheared
// along tau), reached by subtracting whole periods.
cx lattice_reduce(cx w, cx tau);

}  // namespace oxyz
