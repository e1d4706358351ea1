#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openxyz/determinant.hpp>
#include <openxyz/errors.hpp>
#include <openxyz/face_monodromy.hpp>
#include <algorithm>
#include <random>
#include <vector>

using namespace oxyz;

namespace {

std::mt19937_64 rng(90417);

cx rand_pt(double re_span = 0.6, double im_span = 0.25) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return cx(re_span * d(rng), im_span * d(rng));
}

double rel_err(cx a, cx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::vector<cx> rand_tuple(int n) {
  std::vector<cx> out;
  for (int i = 0; i < n; ++i) out.push_back(rand_pt());
  return out;
}

std::vector<BetheRoots> generic_roots(const ModelParams& p, BetheFamily fam,
                                      int m) {
  std::vector<BetheRoots> out;
  for (const auto& r : solve_bae(p, fam, m)) {
    if (roots_generic(p, r.v)) out.push_back(r);
  }
  return out;
}

// Linear Richardson step for the u -> v coincidence limit of the scalar
// product: two shrinking offsets, extrapolated to zero offset.
cx norm_from_limit(const ModelParams& p, ScalarKind kind,
                   const std::vector<cx>& v, double h1, double h2) {
  auto shift = [&](double h) {
    std::vector<cx> u = v;
    for (size_t a = 0; a < u.size(); ++a) {
      u[a] += h * cx(1.0, 0.35 + 0.1 * static_cast<double>(a));
    }
    return scalar_product_det(p, kind, u, v).value;
  };
  const cx s1 = shift(h1), s2 = shift(h2);
  return s2 + (s2 - s1) * h2 / (h1 - h2);
}

}  // namespace

TEST_CASE("partition determinants reproduce the ladder scalar products") {
  for (int sites : {2, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const double tol = sites == 2 ? 1e-9 : 1e-8;
    const int m = sites / 2;
    for (ScalarKind kind : {ScalarKind::I_II, ScalarKind::II_I}) {
      const std::vector<cx> u = rand_tuple(m), v = rand_tuple(m);
      std::vector<cx> ubar = u;
      ubar.insert(ubar.end(), v.begin(), v.end());
      const cx oracle = scalar_product_ladder(p, kind, u, v);
      const DetValue det = partition_function(p, kind, ubar);
      CHECK(rel_err(det.value, oracle) <= tol);
      CHECK(det.condition >= 1.0);
      CHECK(std::isfinite(det.condition));
    }
  }
}

TEST_CASE("partition function is symmetric in its parameter list") {
  const ModelParams p = ModelParams::fixture(4);
  const std::vector<cx> ubar = rand_tuple(4);
  for (ScalarKind kind : {ScalarKind::I_II, ScalarKind::II_I}) {
    const cx base = partition_function(p, kind, ubar).value;
    std::vector<cx> perm = ubar;
    std::swap(perm[0], perm[2]);
    CHECK(rel_err(partition_function(p, kind, perm).value, base) <= 1e-10);
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    CHECK(rel_err(partition_function(p, kind, perm).value, base) <= 1e-10);
  }
}

TEST_CASE("partition function rejects bad configurations") {
  const ModelParams p = ModelParams::fixture(4);
  CHECK_THROWS_AS(partition_function(p, ScalarKind::I_II, rand_tuple(3)),
                  ConfigError);
  CHECK_THROWS_AS(partition_function(p, ScalarKind::I_I, rand_tuple(4)),
                  ConfigError);
  CHECK_THROWS_AS(boundary_coeff(p, 0, rand_pt()), ConfigError);
  CHECK_THROWS_AS(boundary_coeff(p, 5, rand_pt()), ConfigError);
}

TEST_CASE("on-shell scalar-product determinants match the ladder route") {
  for (int sites : {2, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const double tol = sites == 2 ? 1e-8 : 1e-6;
    const int m = sites / 2;
    for (ScalarKind kind : {ScalarKind::I_I, ScalarKind::II_II}) {
      const auto roots = generic_roots(p, family_of(kind), m);
      REQUIRE(!roots.empty());
      const std::vector<cx> u = rand_tuple(m);
      for (const auto& r : roots) {
        const cx oracle = scalar_product_ladder(p, kind, u, r.v);
        const DetValue det = scalar_product_det(p, kind, u, r.v);
        CHECK(rel_err(det.value, oracle) <= tol);
        CHECK(det.condition >= 1.0);
        CHECK(std::isfinite(det.condition));
      }
    }
  }
}

TEST_CASE("scalar-product gate rejects off-shell roots unless forced") {
  const ModelParams p = ModelParams::fixture(2);
  const std::vector<cx> u = rand_tuple(1);
  const std::vector<cx> v = {cx(0.23, 0.11)};
  for (ScalarKind kind : {ScalarKind::I_I, ScalarKind::II_II}) {
    CHECK_THROWS_AS(scalar_product_det(p, kind, u, v), OffShellRoots);
    CHECK_THROWS_AS(norm_det(p, kind, v), OffShellRoots);
    const DetValue forced = scalar_product_det(p, kind, u, v, true);
    CHECK(std::isfinite(std::abs(forced.value)));
  }
}

TEST_CASE("reflection-symmetric roots are refused even when forced") {
  const ModelParams p = ModelParams::fixture(2);
  // 2v + eta on the period lattice: the doubling blocks of the formulas
  // vanish identically there, so no finite value exists to report.
  const std::vector<cx> v = {(1.0 - p.eta) / 2.0};
  const std::vector<cx> u = rand_tuple(1);
  for (ScalarKind kind : {ScalarKind::I_I, ScalarKind::II_II}) {
    CHECK(!roots_generic(p, v));
    CHECK_THROWS_AS(scalar_product_det(p, kind, u, v, true), CollidingRoots);
    CHECK_THROWS_AS(norm_det(p, kind, v, true), CollidingRoots);
  }
}

TEST_CASE("norm determinants match the coinciding-argument ladder") {
  for (int sites : {2, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const double tol = sites == 2 ? 1e-8 : 1e-6;
    const int m = sites / 2;
    for (ScalarKind kind : {ScalarKind::I_I, ScalarKind::II_II}) {
      const auto roots = generic_roots(p, family_of(kind), m);
      REQUIRE(!roots.empty());
      for (const auto& r : roots) {
        const cx oracle = scalar_product_ladder(p, kind, r.v, r.v);
        const DetValue det = norm_det(p, kind, r.v);
        CHECK(rel_err(det.value, oracle) <= tol);
        CHECK(det.condition >= 1.0);
      }
    }
  }
}

TEST_CASE("norm is the coincidence limit of the scalar product") {
  const ModelParams p = ModelParams::fixture(2);
  for (ScalarKind kind : {ScalarKind::I_I, ScalarKind::II_II}) {
    const auto roots = generic_roots(p, family_of(kind), 1);
    REQUIRE(!roots.empty());
    const auto& v = roots.front().v;
    const cx lim = norm_from_limit(p, kind, v, 2e-4, 1e-4);
    CHECK(rel_err(lim, norm_det(p, kind, v).value) <= 1e-5);
  }
}

TEST_CASE("distinct on-shell states are orthogonal") {
  const ModelParams p = ModelParams::fixture(2);
  for (ScalarKind kind : {ScalarKind::I_I, ScalarKind::II_II}) {
    const auto roots = generic_roots(p, family_of(kind), 1);
    if (roots.size() < 2) {
      MESSAGE("fewer than two generic solutions found; nothing to pair");
      continue;
    }
    for (size_t a = 0; a < roots.size(); ++a) {
      const double na = std::abs(norm_det(p, kind, roots[a].v).value);
      for (size_t b = 0; b < roots.size(); ++b) {
        if (a == b) continue;
        const double nb = std::abs(norm_det(p, kind, roots[b].v).value);
        const cx s =
            scalar_product_det(p, kind, roots[a].v, roots[b].v).value;
        CHECK(std::abs(s) / std::sqrt(na * nb) <= 1e-6);
      }
    }
  }
}
