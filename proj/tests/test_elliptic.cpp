#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openxyz/elliptic.hpp>
#include <random>

using namespace oxyz;

namespace {

// Plain wide-window reference sum, no cell reduction, extended precision.
cx theta_reference(ThetaChar ch, cx u, cx tau) {
  using cl = std::complex<long double>;
  const cl ipi(0.0L, 3.141592653589793238462643383279503L);
  const cl ul(u.real(), u.imag());
  const cl tl(tau.real(), tau.imag());
  cl s = 0.0L;
  for (long n = -300; n <= 300; ++n) {
    const long double na = static_cast<long double>(n) + ch.a;
    s += std::exp(ipi * (na * na * tl + 2.0L * na * (ul + cl(ch.b))));
  }
  return cx(static_cast<double>(s.real()), static_cast<double>(s.imag()));
}

std::mt19937_64 rng(20240817);

double unit() {
  static std::uniform_real_distribution<double> d(-1.0, 1.0);
  return d(rng);
}

cx rand_pt(double re_span = 1.0, double im_span = 0.4) {
  return cx(re_span * unit(), im_span * unit());
}

const cx kTau(0.13, 0.83);
const cx kIPi(0.0, std::acos(-1.0));

}  // namespace

TEST_CASE("theta matches the direct series") {
  const ThetaChar chars[] = {{0.5, 0.5}, {0.0, 0.5}, {0.5, 0.0}, {0.0, 0.0}};
  for (const auto& ch : chars) {
    for (int t = 0; t < 20; ++t) {
      const cx u = rand_pt();
      const cx ref = theta_reference(ch, u, kTau);
      const cx got = theta(ch, u, kTau);
      CHECK(std::abs(got - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("theta quasi-periodicity") {
  const ThetaChar ch{0.5, 0.5};
  for (int t = 0; t < 12; ++t) {
    const cx u = rand_pt();
    const cx base = theta(ch, u, kTau);
    const cx shift1 = theta(ch, u + 1.0, kTau);
    CHECK(std::abs(shift1 - std::exp(2.0 * kIPi * ch.a) * base) <=
          1e-11 * std::abs(base));
    const cx shift_tau = theta(ch, u + kTau, kTau);
    const cx factor = std::exp(-kIPi * kTau - 2.0 * kIPi * (u + ch.b));
    CHECK(std::abs(shift_tau - factor * base) <=
          1e-11 * std::abs(factor * base));
    // Far cell: library reduction against iterated functional equations.
    const cx far = theta(ch, u + 5.0 + 3.0 * kTau, kTau);
    cx expect = base;
    for (int k = 0; k < 3; ++k)
      expect *= std::exp(-kIPi * kTau -
                         2.0 * kIPi * (u + static_cast<double>(k) * kTau + ch.b));
    expect *= std::exp(2.0 * kIPi * ch.a * 5.0);
    CHECK(std::abs(far - expect) <= 1e-10 * std::abs(expect));
  }
}

TEST_CASE("sigma parity and periods") {
  const Elliptic e(kTau);
  for (int t = 0; t < 12; ++t) {
    const cx u = rand_pt();
    const cx s = e.sigma(u);
    CHECK(std::abs(e.sigma(-u) + s) <= 1e-12 * std::abs(s));
    CHECK(std::abs(e.sigma(u + 1.0) + s) <= 1e-11 * std::abs(s));
    const cx factor = std::exp(-2.0 * kIPi * (u + 0.5 + 0.5 * kTau));
    CHECK(std::abs(e.sigma(u + kTau) - factor * s) <=
          1e-11 * std::abs(factor * s));
    CHECK(std::abs(e.theta_j(0, -u) + e.theta_j(0, u)) <=
          1e-12 * std::max(1.0, std::abs(e.theta_j(0, u))));
    CHECK(std::abs(e.theta_j(1, -u) - e.theta_j(1, u)) <=
          1e-12 * std::max(1.0, std::abs(e.theta_j(1, u))));
    CHECK(std::abs(e.theta_j(2, u) - e.theta_j(0, u)) <=
          1e-13 * std::max(1.0, std::abs(e.theta_j(0, u))));
  }
  CHECK(std::abs(e.sigma(cx(0.0))) < 1e-14);
}

TEST_CASE("riemann product identity") {
  const Elliptic e1(cx(0.0, 1.0));
  const Elliptic e2(cx(0.21, 0.93));
  for (int t = 0; t < 30; ++t) {
    CHECK(e1.riemann_residual(rand_pt(), rand_pt(), rand_pt(), rand_pt()) <=
          1e-10);
    CHECK(e2.riemann_residual(rand_pt(), rand_pt(), rand_pt(), rand_pt()) <=
          1e-10);
  }
}

TEST_CASE("sigma duplication") {
  const Elliptic e(kTau);
  const SigmaLabel labels[] = {{0, 1}, {1, 0}, {1, 1}};
  cx denom = 1.0;
  for (const auto& l : labels) denom *= e.sigma_alpha(l, cx(0.0));
  for (int t = 0; t < 12; ++t) {
    const cx u = rand_pt();
    cx num = 2.0 * e.sigma(u);
    for (const auto& l : labels) num *= e.sigma_alpha(l, u);
    const cx lhs = e.sigma(2.0 * u);
    CHECK(std::abs(lhs - num / denom) <= 1e-11 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("log derivatives against central differences") {
  const Elliptic e(kTau);
  const double h = 1e-6;
  for (int t = 0; t < 10; ++t) {
    const cx u = rand_pt() + cx(0.31, 0.05);  // keep away from lattice zeros
    const cx fd = (e.sigma(u + h) - e.sigma(u - h)) / (2.0 * h * e.sigma(u));
    CHECK(std::abs(e.log_deriv_sigma(u) - fd) <= 1e-7);
    const ThetaChar ch{0.0, 0.5};
    const cx fd2 =
        (theta(ch, u + h, kTau) - theta(ch, u - h, kTau)) /
        (2.0 * h * theta(ch, u, kTau));
    CHECK(std::abs(theta_dlog(ch, u, kTau) - fd2) <= 1e-7);
  }
  // Far from the fundamental cell the reduction correction enters.
  const cx u = cx(0.27, 0.11) + 7.0 + 4.0 * kTau;
  const cx fd = (e.sigma(u + h) - e.sigma(u - h)) / (2.0 * h * e.sigma(u));
  CHECK(std::abs(e.log_deriv_sigma(u) - fd) <= 1e-6 * std::abs(fd));
}

TEST_CASE("pole and domain guards") {
  const Elliptic e(kTau);
  CHECK_THROWS_AS(e.log_deriv_sigma(cx(0.0)), NearPole);
  CHECK_THROWS_AS(Elliptic(cx(0.0, 0.1)), NonConvergent);
  CHECK_THROWS_AS(theta({0.5, 0.5}, cx(0.3), cx(0.5, 0.05)), NonConvergent);
}

TEST_CASE("trigonometric degeneration") {
  const Elliptic e5(cx(0.0, 5.0));
  const Elliptic e8(cx(0.0, 8.0));
  for (int t = 0; t < 10; ++t) {
    const cx u = rand_pt(0.9, 0.3);
    CHECK(e5.trig_limit_check(u) <= 1e-5);
    CHECK(e8.trig_limit_check(u) <= 1e-8);
  }
}
