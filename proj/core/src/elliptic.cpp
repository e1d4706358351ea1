#include "openxyz/elliptic.hpp"

#include <cmath>
#include <numbers>

namespace oxyz {

namespace {

constexpr double kImTauFloor = 0.2;
constexpr double kTailFraction = 1e-16;
constexpr int kTruncStart = 12;
constexpr int kTruncCap = 96;
// log(1e100): prefactors beyond this would overflow downstream products.
constexpr double kLogOverflow = 230.0;

const cx kIPi(0.0, std::numbers::pi);

struct Reduced {
  cx u0;       // representative in the fundamental cell
  cx log_pref; // theta(u) = exp(log_pref) * theta(u0)
  long q;      // number of tau-shifts removed
};

// u = u0 + p + q*tau with integer p,q chosen so that |Im u0| <= Im(tau)/2 and
// |Re u0| <= 1/2 + |q Re tau| remainder. The exact shift factors are
//   theta[a;b](u0 + p)      = exp(2 i pi a p) theta[a;b](u0),
//   theta[a;b](u0 + q tau)  = exp(-i pi q^2 tau - 2 i pi q (u0 + b)) theta[a;b](u0).
Reduced reduce_cell(ThetaChar ch, cx u, cx tau) {
  const double q = std::round(u.imag() / tau.imag());
  const cx u1 = u - q * tau;
  const double p = std::round(u1.real());
  const cx u0 = u1 - p;
  const cx log_pref =
      2.0 * kIPi * ch.a * p - kIPi * q * q * tau - 2.0 * kIPi * q * (u0 + ch.b);
  return {u0, log_pref, static_cast<long>(q)};
}

// Core series evaluation at a cell-reduced argument. Optionally accumulates
// the term-wise derivative series.
void theta_series(ThetaChar ch, cx u0, cx tau, cx* value, cx* derivative) {
  auto term = [&](long n) {
    const double na = static_cast<double>(n) + ch.a;
    return std::exp(kIPi * (na * na * tau + 2.0 * na * (u0 + ch.b)));
  };
  cx s = term(0);
  cx d = 2.0 * kIPi * ch.a * term(0);
  long n = 1;
  int cap = kTruncStart;
  for (;;) {
    cx last{};
    for (; n <= cap; ++n) {
      const cx tp = term(n);
      const cx tm = term(-n);
      s += tp + tm;
      if (derivative) {
        const double np = static_cast<double>(n) + ch.a;
        const double nm = static_cast<double>(-n) + ch.a;
        d += 2.0 * kIPi * (np * tp + nm * tm);
      }
      last = tp + tm;
    }
    if (std::abs(last) < kTailFraction * std::abs(s)) break;
    if (cap >= kTruncCap) {
      throw NonConvergent("theta series did not converge at truncation cap");
    }
    cap *= 2;
  }
  if (value) *value = s;
  if (derivative) *derivative = d;
}

void check_tau(cx tau) {
  if (!(tau.imag() >= kImTauFloor)) {
    throw NonConvergent("theta requires Im(tau) >= 0.2");
  }
}

}  // namespace

cx theta(ThetaChar ch, cx u, cx tau) {
  check_tau(tau);
  const Reduced r = reduce_cell(ch, u, tau);
  if (r.log_pref.real() > kLogOverflow) {
    throw NonConvergent("theta quasi-periodic prefactor overflows");
  }
  cx s;
  theta_series(ch, r.u0, tau, &s, nullptr);
  return std::exp(r.log_pref) * s;
}

cx theta_dlog(ThetaChar ch, cx u, cx tau) {
  check_tau(tau);
  const Reduced r = reduce_cell(ch, u, tau);
  cx s, d;
  theta_series(ch, r.u0, tau, &s, &d);
  if (std::abs(s) <= kPoleThreshold) {
    throw NearPole("theta_dlog evaluated too close to a zero");
  }
  // d/du of the reduction prefactor contributes -2 i pi q.
  return d / s - 2.0 * kIPi * static_cast<double>(r.q);
}

Elliptic::Elliptic(cx tau) : tau_(tau) { check_tau(tau); }

cx Elliptic::sigma(cx u) const { return theta({0.5, 0.5}, u, tau_); }

cx Elliptic::sigma_alpha(SigmaLabel a, cx u) const {
  return theta({0.5 * (1 + a.alpha1), 0.5 * (1 + a.alpha2)}, u, tau_);
}

cx Elliptic::theta_j(int j, cx u) const {
  return theta({0.5 * (1 - j), 0.5}, u, 2.0 * tau_);
}

cx Elliptic::log_deriv_sigma(cx u) const {
  return theta_dlog({0.5, 0.5}, u, tau_);
}

cx Elliptic::sigma_prime0() const {
  cx s, d;
  theta_series({0.5, 0.5}, cx{0.0, 0.0}, tau_, &s, &d);
  return d;
}

double Elliptic::riemann_residual(cx u, cx v, cx x, cx y) const {
  const cx t1 = sigma(u + x) * sigma(u - x) * sigma(v + y) * sigma(v - y);
  const cx t2 = sigma(u + y) * sigma(u - y) * sigma(v + x) * sigma(v - x);
  const cx rhs = sigma(u + v) * sigma(u - v) * sigma(x + y) * sigma(x - y);
  const double scale =
      std::max({std::abs(t1), std::abs(t2), std::abs(rhs), 1e-30});
  return std::abs(t1 - t2 - rhs) / scale;
}

double Elliptic::trig_limit_check(cx u) const {
  const cx s = sigma(u);
  const cx asym = -2.0 * std::exp(kIPi * tau_ / 4.0) *
                  std::sin(std::numbers::pi * u);
  if (std::abs(s) < 1e-14 && std::abs(asym) < 1e-14) return 0.0;
  return std::abs(s / asym - 1.0);
}

cx lattice_reduce(cx w, cx tau) {
  const double q = std::floor(w.imag() / tau.imag());
  const cx w1 = w - q * tau;
  return w1 - std::floor(w1.real());
}

double lattice_distance(cx w, cx tau) {
  const double q = std::round(w.imag() / tau.imag());
  const cx w1 = w - q * tau;
  const cx w0 = w1 - std::round(w1.real());
  double best = std::abs(w0);
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      best = std::min(best, std::abs(w0 - static_cast<double>(a) -
                                     static_cast<double>(b) * tau));
    }
  }
  return best;
}

}  // namespace oxyz
