#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <openxyz/face_monodromy.hpp>
#include <random>

using namespace oxyz;

namespace {

std::mt19937_64 rng(90125);

cx rand_pt(double re_span = 0.6, double im_span = 0.25) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return cx(re_span * d(rng), im_span * d(rng));
}

double rel_err(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() /
         std::max(a.cwiseAbs().maxCoeff(), 1e-30);
}

// Independent route to the one-row face monodromy: dense dynamical
// embeddings multiplied in order, dynamical slots = already-applied sites.
Mat face_one_row_dense(const ModelParams& p, const Weight& l, cx u, int i,
                       int j) {
  const Elliptic e(p.tau);
  const int N = p.N();
  const int nslots = N + 1;
  Mat full = Mat::Identity(1L << nslots, 1L << nslots);
  for (int k = N; k >= 1; --k) {
    std::vector<int> shift;
    for (int t = 1; t < k; ++t) shift.push_back(t);
    full = full * embed_face(e, p.eta, l, u - p.z[k - 1], 0, k, shift, nslots);
  }
  const long qdim = 1L << N;
  return full.block((i - 1) * qdim, (j - 1) * qdim, qdim, qdim);
}

}  // namespace

TEST_CASE("one-row face monodromy against dense embedding route") {
  for (int sites : {2, 3}) {
    const ModelParams p = ModelParams::fixture(sites);
    const Weight l = p.lambda().shifted(1, 0.4).shifted(2, cx(0.1, 0.05));
    const cx u = rand_pt();
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        CHECK(rel_err(face_one_row(p, l, u, i, j),
                      face_one_row_dense(p, l, u, i, j)) <= 1e-12);
  }
}

TEST_CASE("scalar products: sandwich route equals ladder route, M=1") {
  const ModelParams p = ModelParams::fixture(2);
  const std::vector<cx> us{rand_pt()};
  const std::vector<cx> vs{rand_pt()};
  for (ScalarKind kind : {ScalarKind::I_II, ScalarKind::II_I, ScalarKind::I_I,
                          ScalarKind::II_II}) {
    const cx a = scalar_product_sandwich(p, kind, us, vs);
    const cx b = scalar_product_ladder(p, kind, us, vs);
    CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("scalar products: sandwich route equals ladder route, M=2") {
  const ModelParams p = ModelParams::fixture(4);
  const std::vector<cx> us{rand_pt(), rand_pt()};
  const std::vector<cx> vs{rand_pt(), rand_pt()};
  for (ScalarKind kind : {ScalarKind::I_II, ScalarKind::II_I, ScalarKind::I_I,
                          ScalarKind::II_II}) {
    const cx a = scalar_product_sandwich(p, kind, us, vs);
    const cx b = scalar_product_ladder(p, kind, us, vs);
    CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("one-row face monodromy changes content by the entry labels") {
  // T^i_j raises the number of 2-indices by (j - i) exchanges; matrix
  // elements outside that selection rule vanish identically.
  const ModelParams p = ModelParams::fixture(3);
  const Weight l = p.lambda().shifted(1, cx(0.23, 0.1));
  const cx u = rand_pt();
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const Mat t = face_one_row(p, l, u, i, j);
      for (long r = 0; r < t.rows(); ++r)
        for (long c = 0; c < t.cols(); ++c) {
          int tr = 0, tc = 0;
          for (int k = 0; k < p.N(); ++k) {
            if ((r >> k) & 1L) ++tr;
            if ((c >> k) & 1L) ++tc;
          }
          if (tr != tc + (j - i)) CHECK(std::abs(t(r, c)) == 0.0);
        }
    }
}
