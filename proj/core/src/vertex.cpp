#include "openxyz/vertex.hpp"

#include <Eigen/LU>
#include <cmath>

#include "openxyz/errors.hpp"

namespace oxyz {

namespace {

constexpr double kConditionCap = 1e12;

cx checked_div(cx num, cx den, const char* what) {
  if (std::abs(den) <= kPoleThreshold) throw NearPole(what);
  return num / den;
}

// Coefficient of one Pauli component of a boundary matrix. The label picks
// the sigma variant attached to the three parameter factors upstairs and to
// the single spectral factor downstairs.
cx boundary_coeff(const Elliptic& e, SigmaLabel w, cx spec2, cx spec1, cx p0,
                  cx p1, cx p2, cx d0, cx d1, cx d2) {
  const cx num = e.sigma(spec2) * e.sigma_alpha(w, p0) * e.sigma_alpha(w, p1) *
                 e.sigma_alpha(w, p2);
  const cx den = 2.0 * e.sigma_alpha(w, spec1) * e.sigma(d0) * e.sigma(d1) *
                 e.sigma(d2);
  return checked_div(num, den, "boundary matrix coefficient");
}

Mat2 pauli_combine(cx k0, cx kx, cx ky, cx kz) {
  const cx I(0.0, 1.0);
  Mat2 m;
  m(0, 0) = k0 + kz;
  m(0, 1) = kx - I * ky;
  m(1, 0) = kx + I * ky;
  m(1, 1) = k0 - kz;
  return m;
}

inline int slot_bit(long idx, int slot, int nslots) {
  return static_cast<int>((idx >> (nslots - 1 - slot)) & 1L);
}

inline long with_slot_bit(long idx, int slot, int nslots, int bit) {
  const long mask = 1L << (nslots - 1 - slot);
  return bit ? (idx | mask) : (idx & ~mask);
}

Mat4 swap_slots(const Mat4& m) {
  Mat4 p = Mat4::Zero();
  p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1.0;
  return p * m * p;
}

double rel_residual(const Mat& lhs, const Mat& rhs) {
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), 1e-30);
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

Mat4 rbar(const Elliptic& e, cx eta, cx u) {
  const cx t1u = e.theta_j(1, u), t0u = e.theta_j(0, u);
  const cx t1ue = e.theta_j(1, u + eta), t0ue = e.theta_j(0, u + eta);
  const cx t10 = e.theta_j(1, cx(0.0)), t0e = e.theta_j(0, eta),
           t1e = e.theta_j(1, eta);
  const cx se = e.sigma(eta), sue = e.sigma(u + eta);

  const cx a = checked_div(t1u * t0ue * se, t10 * t0e * sue, "R entry a");
  const cx b = checked_div(t0u * t1ue * se, t10 * t0e * sue, "R entry b");
  const cx c = checked_div(t1u * t1ue * se, t10 * t1e * sue, "R entry c");
  const cx d = checked_div(t0u * t0ue * se, t10 * t1e * sue, "R entry d");

  Mat4 r = Mat4::Zero();
  r(0, 0) = a;
  r(0, 3) = d;
  r(1, 1) = b;
  r(1, 2) = c;
  r(2, 1) = c;
  r(2, 2) = b;
  r(3, 0) = d;
  r(3, 3) = a;
  return r;
}

Mat2 kminus(const ModelParams& p, cx u) {
  const Elliptic e(p.tau);
  const cx half(0.5);
  const cx s12 = p.lambda1 + p.lambda2 - half;
  const cx a1 = p.lambda1 + p.xi, a2 = p.lambda2 + p.xi;
  auto coeff = [&](SigmaLabel w) {
    return boundary_coeff(e, w, 2.0 * u, u, s12, a1, a2, -u + s12, a1 + u,
                          a2 + u);
  };
  const cx I(0.0, 1.0);
  return pauli_combine(coeff({0, 0}), coeff({1, 0}), I * coeff({1, 1}),
                       coeff({0, 1}));
}

Mat2 kplus(const ModelParams& p, cx u) {
  const Elliptic e(p.tau);
  const cx half(0.5);
  const cx s12 = p.lambda1 + p.lambda2 + p.eta - half;
  const cx a1 = p.lambda1 + p.xibar, a2 = p.lambda2 + p.xibar;
  const cx v = -u - p.eta;
  auto coeff = [&](SigmaLabel w) {
    return boundary_coeff(e, w, 2.0 * v, v, s12, a1, a2, u + s12, a1 + v,
                          a2 + v);
  };
  const cx I(0.0, 1.0);
  return pauli_combine(coeff({0, 0}), coeff({1, 0}), I * coeff({1, 1}),
                       coeff({0, 1}));
}

Mat embed_two_slot(const Mat4& m, int a, int b, int nslots) {
  const long dim = 1L << nslots;
  Mat out = Mat::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    const int ia = slot_bit(col, a, nslots);
    const int ib = slot_bit(col, b, nslots);
    for (int oa = 0; oa < 2; ++oa) {
      for (int ob = 0; ob < 2; ++ob) {
        const cx v = m(2 * oa + ob, 2 * ia + ib);
        if (v == cx(0.0)) continue;
        long row = with_slot_bit(col, a, nslots, oa);
        row = with_slot_bit(row, b, nslots, ob);
        out(row, col) += v;
      }
    }
  }
  return out;
}

Mat embed_one_slot(const Mat2& m, int a, int nslots) {
  const long dim = 1L << nslots;
  Mat out = Mat::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    const int ia = slot_bit(col, a, nslots);
    for (int oa = 0; oa < 2; ++oa) {
      const cx v = m(oa, ia);
      if (v == cx(0.0)) continue;
      out(with_slot_bit(col, a, nslots, oa), col) += v;
    }
  }
  return out;
}

Mat aux_transpose(const Mat& full, long quantum_dim) {
  Mat out(full.rows(), full.cols());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block(i * quantum_dim, j * quantum_dim, quantum_dim, quantum_dim) =
          full.block(j * quantum_dim, i * quantum_dim, quantum_dim,
                     quantum_dim);
  return out;
}

Mat one_row_monodromy_full(const ModelParams& p, cx u) {
  const Elliptic e(p.tau);
  const int N = p.N();
  const int nslots = N + 1;
  Mat full = embed_two_slot(rbar(e, p.eta, u - p.z[N - 1]), 0, N, nslots);
  for (int k = N - 1; k >= 1; --k)
    full *= embed_two_slot(rbar(e, p.eta, u - p.z[k - 1]), 0, k, nslots);
  return full;
}

Mat hat_monodromy_full(const ModelParams& p, cx u) {
  const Mat t = one_row_monodromy_full(p, -u);
  Eigen::PartialPivLU<Mat> lu(t);
  const Mat inv = lu.inverse();
  const double cond = t.cwiseAbs().colwise().sum().maxCoeff() *
                      inv.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(cond) || cond > kConditionCap)
    throw SingularInverse("one-row monodromy is numerically singular");
  return inv;
}

Mat double_row_full(const ModelParams& p, cx u) {
  const int nslots = p.N() + 1;
  return one_row_monodromy_full(p, u) * embed_one_slot(kminus(p, u), 0, nslots) *
         hat_monodromy_full(p, u);
}

Mat dual_double_row_t0_full(const ModelParams& p, cx u) {
  const int nslots = p.N() + 1;
  const long qdim = 1L << p.N();
  const Mat2 kp = kplus(p, u);
  return aux_transpose(one_row_monodromy_full(p, u), qdim) *
         embed_one_slot(kp.transpose(), 0, nslots) *
         aux_transpose(hat_monodromy_full(p, u), qdim);
}

Mat dual_double_row_full(const ModelParams& p, cx u) {
  return aux_transpose(dual_double_row_t0_full(p, u), 1L << p.N());
}

LaxBlock blocks_of(const Mat& full, int N) {
  const long qdim = 1L << N;
  LaxBlock b;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      b.block[i][j] = full.block(i * qdim, j * qdim, qdim, qdim);
  return b;
}

LaxBlock one_row_monodromy(const ModelParams& p, cx u) {
  return blocks_of(one_row_monodromy_full(p, u), p.N());
}

LaxBlock hat_monodromy(const ModelParams& p, cx u) {
  return blocks_of(hat_monodromy_full(p, u), p.N());
}

LaxBlock double_row_monodromy(const ModelParams& p, cx u) {
  return blocks_of(double_row_full(p, u), p.N());
}

LaxBlock dual_double_row(const ModelParams& p, cx u) {
  return blocks_of(dual_double_row_full(p, u), p.N());
}

Mat transfer_matrix(const ModelParams& p, cx u) {
  const Mat2 kp = kplus(p, u);
  const LaxBlock tt = double_row_monodromy(p, u);
  const long qdim = 1L << p.N();
  Mat out = Mat::Zero(qdim, qdim);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out += kp(a, b) * tt.block[b][a];
  return out;
}

double qybe_residual(const Elliptic& e, cx eta, cx u1, cx u2, cx u3) {
  const Mat r12 = embed_two_slot(rbar(e, eta, u1 - u2), 0, 1, 3);
  const Mat r13 = embed_two_slot(rbar(e, eta, u1 - u3), 0, 2, 3);
  const Mat r23 = embed_two_slot(rbar(e, eta, u2 - u3), 1, 2, 3);
  return rel_residual(r12 * r13 * r23, r23 * r13 * r12);
}

double rbar_unitarity_residual(const Elliptic& e, cx eta, cx u) {
  const Mat4 lhs = rbar(e, eta, u) * swap_slots(rbar(e, eta, -u));
  return rel_residual(lhs, Mat4::Identity());
}

double re_residual(const ModelParams& p, cx u1, cx u2) {
  const Elliptic e(p.tau);
  auto emb = [&](const Mat4& m) { return Mat(m); };
  const Mat r12m = emb(rbar(e, p.eta, u1 - u2));
  const Mat r12p = emb(rbar(e, p.eta, u1 + u2));
  const Mat r21m = emb(swap_slots(rbar(e, p.eta, u1 - u2)));
  const Mat r21p = emb(swap_slots(rbar(e, p.eta, u1 + u2)));
  const Mat k1 = embed_one_slot(kminus(p, u1), 0, 2);
  const Mat k2 = embed_one_slot(kminus(p, u2), 1, 2);
  return rel_residual(r12m * k1 * r21p * k2, k2 * r12p * k1 * r21m);
}

double dual_re_residual(const ModelParams& p, cx u1, cx u2) {
  const Elliptic e(p.tau);
  const cx two_eta = 2.0 * p.eta;
  const Mat r12m = Mat(rbar(e, p.eta, u2 - u1));
  const Mat r12c = Mat(rbar(e, p.eta, -u1 - u2 - two_eta));
  const Mat r21m = Mat(swap_slots(rbar(e, p.eta, u2 - u1)));
  const Mat r21c = Mat(swap_slots(rbar(e, p.eta, -u1 - u2 - two_eta)));
  const Mat k1 = embed_one_slot(kplus(p, u1), 0, 2);
  const Mat k2 = embed_one_slot(kplus(p, u2), 1, 2);
  return rel_residual(r12m * k1 * r21c * k2, k2 * r12c * k1 * r21m);
}

}  // namespace oxyz
