#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openxyz/bethe.hpp>
#include <openxyz/determinant.hpp>
#include <openxyz/face_monodromy.hpp>
#include <openxyz/vertex.hpp>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

using namespace oxyz;

namespace {

std::mt19937_64 rng(77120);

cx rand_pt(double re_span = 0.6, double im_span = 0.25) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return cx(re_span * d(rng), im_span * d(rng));
}

std::vector<BetheRoots> generic_roots(const ModelParams& p, BetheFamily fam,
                                      int m) {
  std::vector<BetheRoots> out;
  for (const auto& r : solve_bae(p, fam, m)) {
    if (roots_generic(p, r.v)) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("equation residual is invariant under root symmetries") {
  const ModelParams p = ModelParams::fixture(4);
  const std::vector<cx> v = {cx(0.23, 0.11), cx(0.61, 0.32)};
  for (BetheFamily fam : {BetheFamily::One, BetheFamily::Two}) {
    const double base = bae_residual_norm(p, fam, v);
    for (size_t a = 0; a < v.size(); ++a) {
      std::vector<cx> shifted = v;
      shifted[a] += 1.0;
      CHECK(std::abs(bae_residual_norm(p, fam, shifted) - base) <= 1e-10);
      shifted = v;
      shifted[a] += p.tau;
      CHECK(std::abs(bae_residual_norm(p, fam, shifted) - base) <= 1e-10);
      shifted = v;
      shifted[a] = -v[a] - p.eta;
      CHECK(std::abs(bae_residual_norm(p, fam, shifted) - base) <= 1e-10);
    }
  }
}

TEST_CASE("analytic jacobian matches finite differences") {
  const ModelParams p = ModelParams::fixture(4);
  const std::vector<cx> v = {cx(0.19, 0.14), cx(0.57, 0.29)};
  const double h = 1e-6;
  for (BetheFamily fam : {BetheFamily::One, BetheFamily::Two}) {
    const Mat jac = bae_jacobian(p, fam, v);
    for (int a = 0; a < 2; ++a) {
      std::vector<cx> vp = v, vm = v;
      vp[static_cast<size_t>(a)] += h;
      vm[static_cast<size_t>(a)] -= h;
      const Vec fd =
          (bae_residual(p, fam, vp) - bae_residual(p, fam, vm)) / (2.0 * h);
      for (int j = 0; j < 2; ++j) {
        CHECK(std::abs(jac(j, a) - fd(j)) /
                  std::max(std::abs(jac(j, a)), 1e-30) <=
              1e-5);
      }
    }
  }
}

TEST_CASE("solver returns canonical on-shell roots deterministically") {
  const ModelParams p = ModelParams::fixture(2);
  for (BetheFamily fam : {BetheFamily::One, BetheFamily::Two}) {
    const auto roots = solve_bae(p, fam, 1);
    REQUIRE(!roots.empty());
    for (const auto& r : roots) {
      CHECK(r.residual < 1e-9);
      CHECK(bae_residual_norm(p, fam, r.v) < 1e-9);
      for (cx root : r.v) {
        CHECK(root.real() >= 0.0);
        CHECK(root.real() < 1.0);
        CHECK(root.imag() >= 0.0);
        CHECK(root.imag() < p.tau.imag());
      }
      const Mat jac = bae_jacobian(p, fam, r.v);
      CHECK(std::abs(jac.partialPivLu().determinant()) > 1e-10);
    }
    const auto again = solve_bae(p, fam, 1);
    REQUIRE(again.size() == roots.size());
    for (size_t i = 0; i < roots.size(); ++i) {
      for (size_t j = 0; j < roots[i].v.size(); ++j) {
        CHECK(roots[i].v[j] == again[i].v[j]);
      }
    }
  }
}

TEST_CASE("empty sector yields the reference solution") {
  const ModelParams p = ModelParams::fixture(2);
  const auto roots = solve_bae(p, BetheFamily::One, 0);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].v.empty());
  CHECK(roots[0].residual == 0.0);
  CHECK(bae_residual_norm(p, BetheFamily::One, {}) == 0.0);
}

TEST_CASE("ladder states are transfer-matrix eigenstates") {
  const ModelParams p = ModelParams::fixture(2);
  const std::vector<cx> upts = {cx(0.31, 0.12), cx(-0.22, 0.07),
                                cx(0.57, -0.18)};
  for (BetheFamily fam : {BetheFamily::One, BetheFamily::Two}) {
    const auto roots = generic_roots(p, fam, 1);
    REQUIRE(!roots.empty());
    for (const auto& r : roots) {
      const Vec ket = fam == BetheFamily::One ? bethe_state_one(p, r.v)
                                              : bethe_state_two(p, r.v);
      REQUIRE(ket.norm() > 1e-12);
      for (cx u : upts) {
        const cx lam = transfer_eigenvalue(p, fam, u, r.v);
        const Vec img = transfer_matrix(p, u) * ket;
        CHECK((img - lam * ket).norm() /
                  (std::abs(lam) * ket.norm() + img.norm()) <=
              1e-7);
      }
    }
  }
}

TEST_CASE("formula eigenvalues appear in the dense spectrum") {
  const ModelParams p = ModelParams::fixture(2);
  const cx u0(0.31, 0.12);
  const Mat t = transfer_matrix(p, u0);
  Eigen::ComplexEigenSolver<Mat> es(t);
  const auto& eigs = es.eigenvalues();
  const double scale = eigs.cwiseAbs().maxCoeff();
  for (BetheFamily fam : {BetheFamily::One, BetheFamily::Two}) {
    for (const auto& r : generic_roots(p, fam, 1)) {
      const cx lam = transfer_eigenvalue(p, fam, u0, r.v);
      double best = 1e300;
      for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        best = std::min(best, std::abs(eigs(i) - lam));
      }
      CHECK(best / scale <= 1e-6);
    }
  }
}

TEST_CASE("transfer matrices commute at distinct spectral points") {
  for (int sites : {2, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const Mat a = transfer_matrix(p, rand_pt());
    const Mat b = transfer_matrix(p, rand_pt());
    const double dev = (a * b - b * a).cwiseAbs().maxCoeff() /
                       (a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
    CHECK(dev <= (sites == 2 ? 1e-9 : 1e-8));
  }
}

TEST_CASE("family mapping of scalar kinds") {
  CHECK(family_of(ScalarKind::I_I) == BetheFamily::One);
  CHECK(family_of(ScalarKind::II_II) == BetheFamily::Two);
  CHECK_THROWS_AS(family_of(ScalarKind::I_II), ConfigError);
  CHECK_THROWS_AS(family_of(ScalarKind::II_I), ConfigError);
}
