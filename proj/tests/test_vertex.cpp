#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openxyz/vertex.hpp>
#include <random>

using namespace oxyz;

namespace {

std::mt19937_64 rng(777001);

cx rand_pt(double re_span = 0.8, double im_span = 0.3) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return cx(re_span * d(rng), im_span * d(rng));
}

const ModelParams kP = ModelParams::fixture(2);

double rel_err(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() /
         std::max(a.cwiseAbs().maxCoeff(), 1e-30);
}

}  // namespace

TEST_CASE("rbar at zero is the permutation") {
  const Elliptic e(kP.tau);
  Mat4 p = Mat4::Zero();
  p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1.0;
  CHECK(rel_err(rbar(e, kP.eta, cx(0.0)), p) <= 1e-12);
}

TEST_CASE("rbar symmetry under slot exchange") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 6; ++t) {
    const Mat4 r = rbar(e, kP.eta, rand_pt());
    Mat4 p = Mat4::Zero();
    p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1.0;
    CHECK(rel_err(p * r * p, r) <= 1e-13);
  }
}

TEST_CASE("quantum yang-baxter") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 8; ++t)
    CHECK(qybe_residual(e, kP.eta, rand_pt(), rand_pt(), rand_pt()) <= 1e-11);
}

TEST_CASE("rbar unitarity") {
  const Elliptic e(kP.tau);
  for (int t = 0; t < 6; ++t)
    CHECK(rbar_unitarity_residual(e, kP.eta, rand_pt()) <= 1e-12);
}

TEST_CASE("reflection equations") {
  for (int t = 0; t < 8; ++t) {
    CHECK(re_residual(kP, rand_pt(), rand_pt()) <= 1e-11);
    CHECK(dual_re_residual(kP, rand_pt(), rand_pt()) <= 1e-11);
  }
}

TEST_CASE("embeddings compose like kron") {
  const Elliptic e(kP.tau);
  const Mat4 r = rbar(e, kP.eta, rand_pt());
  // Slots (0,1) of a 2-slot register is the matrix itself.
  CHECK(rel_err(embed_two_slot(r, 0, 1, 2), Mat(r)) == 0.0);
  // Acting on slot pair (1,2) of 3 slots = id (x) r.
  Mat expect = Mat::Zero(8, 8);
  expect.block(0, 0, 4, 4) = r;
  expect.block(4, 4, 4, 4) = r;
  CHECK(rel_err(embed_two_slot(r, 1, 2, 3), expect) == 0.0);
}

TEST_CASE("monodromy inverse pairing") {
  const cx u = rand_pt();
  const Mat t = one_row_monodromy_full(kP, -u);
  const Mat th = hat_monodromy_full(kP, u);
  CHECK(rel_err(t * th, Mat::Identity(t.rows(), t.cols())) <= 1e-11);
}

TEST_CASE("transfer matrices commute") {
  const cx u = rand_pt(), v = rand_pt();
  const Mat a = transfer_matrix(kP, u);
  const Mat b = transfer_matrix(kP, v);
  CHECK(rel_err(a * b, b * a) <= 1e-10);
}

TEST_CASE("dual double row transpose bookkeeping") {
  const cx u = rand_pt();
  const long qdim = 1L << kP.N();
  const Mat direct = dual_double_row_full(kP, u);
  const Mat twice = aux_transpose(aux_transpose(direct, qdim), qdim);
  CHECK(rel_err(twice, direct) == 0.0);
}
