#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openxyz/face.hpp>
#include <random>

using namespace oxyz;

namespace {

std::mt19937_64 rng(424243);

cx rand_pt(double re_span = 0.8, double im_span = 0.3) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return cx(re_span * d(rng), im_span * d(rng));
}

const ModelParams kP = ModelParams::fixture(2);

Weight rand_weight() {
  return Weight{cx(0.9, 0.15) + 0.3 * rand_pt(), cx(-0.5, 0.21) + 0.3 * rand_pt()};
}

}  // namespace

TEST_CASE("dynamical yang-baxter") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 6; ++t)
    CHECK(mybe_residual(e, kP.eta, rand_weight(), rand_pt(), rand_pt(),
                        rand_pt()) <= 1e-11);
}

TEST_CASE("face unitarity, crossing, weight conservation") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 6; ++t) {
    const Weight m = rand_weight();
    const cx u = rand_pt();
    CHECK(face_unitarity_residual(e, kP.eta, m, u) <= 1e-11);
    CHECK(face_crossing_residual(e, kP.eta, m, u) <= 1e-11);
    CHECK(face_weight_conservation_residual(e, kP.eta, m, u) <= 1e-12);
  }
}

TEST_CASE("intertwiner determinant factorizes") {
  const Elliptic e(kP.tau);
  cx c_ref{};
  for (int t = 0; t < 8; ++t) {
    const Weight m = rand_weight();
    const cx u = rand_pt();
    const cx det = intertwiner_det(e, m, u);
    const cx frame = e.sigma(u + m.m1 + m.m2 - 0.5) * e.sigma(m.m12());
    const cx c = det / frame;
    if (t == 0)
      c_ref = c;
    else
      CHECK(std::abs(c - c_ref) <= 1e-10 * std::abs(c_ref));
  }
}

TEST_CASE("intertwiner inverses and completeness") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 6; ++t) {
    const Weight m = rand_weight();
    const cx u = rand_pt();
    Eigen::Matrix2cd idbar = Eigen::Matrix2cd::Zero();
    Eigen::Matrix2cd idtil = Eigen::Matrix2cd::Zero();
    for (int mu = 1; mu <= 2; ++mu) {
      for (int nu = 1; nu <= 2; ++nu) {
        const cx dbar = (phibar_vec(e, m, mu, u) * phi_vec(e, m, nu, u)).value();
        const cx dtil = (phitilde_vec(e, kP.eta, m, mu, u) *
                         phi_vec(e, m.shifted(nu, kP.eta), nu, u))
                            .value();
        const double expect = (mu == nu) ? 1.0 : 0.0;
        CHECK(std::abs(dbar - expect) <= 1e-11);
        CHECK(std::abs(dtil - expect) <= 1e-11);
      }
      idbar += phi_vec(e, m, mu, u) * phibar_vec(e, m, mu, u);
      idtil += phi_vec(e, m.shifted(mu, kP.eta), mu, u) *
               phitilde_vec(e, kP.eta, m, mu, u);
    }
    CHECK((idbar - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <=
          1e-11);
    CHECK((idtil - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <=
          1e-11);
  }
}

TEST_CASE("face-vertex exchange relations") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 4; ++t) {
    const Weight m = rand_weight();
    const cx u1 = rand_pt(), u2 = rand_pt();
    for (int which = 0; which < 5; ++which)
      CHECK(face_vertex_residual(e, kP.eta, m, which, u1, u2) <= 1e-10);
  }
}

TEST_CASE("boundary matrices from intertwiner sandwiches") {
  for (int t = 0; t < 6; ++t) {
    const cx u = rand_pt();
    CHECK(kminus_reconstruction_residual(kP, u) <= 1e-10);
    CHECK(kplus_reconstruction_residual(kP, u) <= 1e-10);
  }
}

TEST_CASE("dynamical embedding reads the shift slots") {
  const Elliptic e(kP.tau);
  const Weight m = rand_weight();
  const cx u = rand_pt();
  const Mat full = embed_face(e, kP.eta, m, u, 0, 1, {2}, 3);
  // Columns with slot 2 in state j must reproduce face_r at m - eta j.
  for (int j = 1; j <= 2; ++j) {
    const Mat4 r = face_r(e, kP.eta, m.shifted(j, -kP.eta), u);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c)
          for (int d = 0; d < 2; ++d) {
            const long col = (c << 2) | (d << 1) | (j - 1);
            const long row = (a << 2) | (b << 1) | (j - 1);
            CHECK(std::abs(full(row, col) - r(2 * a + b, 2 * c + d)) <= 1e-14);
          }
  }
}
