#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <openxyz/fbasis.hpp>
#include <random>

using namespace oxyz;

namespace {

std::mt19937_64 rng(52980);

cx rand_pt(double re_span = 0.6, double im_span = 0.25) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return cx(re_span * d(rng), im_span * d(rng));
}

double rel_err(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() /
         std::max(a.cwiseAbs().maxCoeff(), 1e-30);
}

Weight rand_weight(const ModelParams& p) {
  return p.lambda().shifted(1, rand_pt()).shifted(2, rand_pt());
}

long sector_bits(long s, int n) {
  long count = 0;
  for (int k = 0; k < n; ++k) count += (s >> k) & 1;
  return count;
}

}  // namespace

TEST_CASE("exchange operators are word independent") {
  const ModelParams p = ModelParams::fixture(3);
  const Weight l = rand_weight(p);
  const Perm id{0, 1, 2};
  const Mat a = exchange_operator_word(p, l, id, {0, 1, 0});
  const Mat b = exchange_operator_word(p, l, id, {1, 0, 1});
  CHECK(rel_err(a, b) <= 1e-12);
}

TEST_CASE("twist factorizes every exchange operator") {
  const ModelParams p = ModelParams::fixture(3);
  const Weight l = rand_weight(p);
  const Mat f_id = f_matrix(p, l);
  Perm s{0, 1, 2};
  do {
    const Mat lhs = f_matrix_tuple(p, l, s) * exchange_operator(p, l, s);
    CHECK(rel_err(lhs, f_id) <= 1e-11);
  } while (std::next_permutation(s.begin(), s.end()));
}

TEST_CASE("twist is lower triangular with nonzero diagonal") {
  for (int sites : {2, 3, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const Mat f = f_matrix(p, rand_weight(p));
    const double scale = f.cwiseAbs().maxCoeff();
    double upper = 0.0;
    double diag_min = 1e300;
    for (long r = 0; r < f.rows(); ++r) {
      for (long c = r + 1; c < f.cols(); ++c)
        upper = std::max(upper, std::abs(f(r, c)));
      diag_min = std::min(diag_min, std::abs(f(r, r)));
    }
    CHECK(upper == 0.0);
    CHECK(diag_min > 1e-8 * scale);
  }
}

TEST_CASE("twisted one-row blocks match their closed forms") {
  for (int sites : {2, 3}) {
    const ModelParams p = ModelParams::fixture(sites);
    const Weight l = rand_weight(p);
    const cx u = rand_pt();
    CHECK(rel_err(twisted_one_row(p, l, u, 2, 2), twisted_t22(p, l, u)) <=
          1e-10);
    CHECK(rel_err(twisted_one_row(p, l, u, 2, 1), twisted_t21(p, l, u)) <=
          1e-10);
    CHECK(rel_err(twisted_one_row(p, l, u, 1, 2), twisted_t12(p, l, u)) <=
          1e-10);
  }
}

TEST_CASE("twist conjugation turns double-row operators polarization free") {
  // The hopping-down family is conjugated by the twist at the fixed top
  // weight; the hopping-up family by the twist at its own weight argument,
  // stepped once on the left.
  for (int sites : {2, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const int n = p.N();
    const long dim = 1L << n;
    const Weight lam = p.lambda();
    const Mat f = f_matrix(p, lam);
    const Mat finv = f.partialPivLu().inverse();
    for (int t = 0; t < 2; ++t) {
      const cx u = rand_pt();
      for (long s = 0; s < dim; ++s) {
        const double twos = static_cast<double>(sector_bits(s, n));
        const double ones = static_cast<double>(n) - twos;
        const Weight content =
            Weight{}.shifted(1, ones).shifted(2, twos);
        const Weight mminus =
            lam - Weight{p.eta * content.m1, p.eta * content.m2};
        const Weight mplus =
            lam + Weight{p.eta * content.m1, p.eta * content.m2};
        const Mat gm = f * double_row_minus(p, mminus, u) * finv;
        const Mat cm = creation_minus(p, mminus, u);
        const double scale_m = std::max(cm.cwiseAbs().maxCoeff(), 1e-30);
        CHECK((gm.col(s) - cm.col(s)).cwiseAbs().maxCoeff() / scale_m <=
              1e-10);
        const Mat fp = f_matrix(p, mplus.shifted(2, 2.0 * p.eta));
        const Mat fpinv = f_matrix(p, mplus).partialPivLu().inverse();
        const Mat gp = fp * double_row_plus(p, mplus, u) * fpinv;
        const Mat cp = creation_plus(p, mplus, u);
        const double scale_p = std::max(cp.cwiseAbs().maxCoeff(), 1e-30);
        CHECK((gp.col(s) - cp.col(s)).cwiseAbs().maxCoeff() / scale_p <=
              1e-10);
      }
    }
  }
}

TEST_CASE("scalar products from polarization-free operators, M=1 and M=2") {
  for (int sites : {2, 4}) {
    const ModelParams p = ModelParams::fixture(sites);
    const int m = sites / 2;
    std::vector<cx> us, vs;
    for (int a = 0; a < m; ++a) {
      us.push_back(rand_pt());
      vs.push_back(rand_pt());
    }
    const double tol = sites == 2 ? 1e-9 : 1e-8;
    for (ScalarKind kind : {ScalarKind::I_II, ScalarKind::II_I,
                            ScalarKind::I_I, ScalarKind::II_II}) {
      const cx a = scalar_product_fbasis(p, kind, us, vs);
      const cx b = scalar_product_ladder(p, kind, us, vs);
      CHECK(std::abs(a - b) / std::max(std::abs(a), 1e-30) <= tol);
    }
  }
}
