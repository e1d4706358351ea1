#include "openxyz/face.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "openxyz/errors.hpp"

namespace oxyz {

namespace {

cx checked_div(cx num, cx den, const char* what) {
  if (std::abs(den) <= kPoleThreshold) throw NearPole(what);
  return num / den;
}

Mat4 swap_slots4(const Mat4& m) {
  Mat4 p = Mat4::Zero();
  p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = 1.0;
  return p * m * p;
}

Eigen::Matrix2cd phi_matrix(const Elliptic& e, const Weight& top, cx u) {
  Eigen::Matrix2cd f;
  f.col(0) = phi_vec(e, top, 1, u);
  f.col(1) = phi_vec(e, top, 2, u);
  return f;
}

Eigen::Matrix2cd inverse_of(const Eigen::Matrix2cd& f) {
  const cx det = f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
  const double scale = std::max(f.norm() * f.norm(), 1e-30);
  if (std::abs(det) <= kPoleThreshold * scale)
    throw SingularIntertwiner("intertwiner matrix is numerically singular");
  Eigen::Matrix2cd inv;
  inv << f(1, 1), -f(0, 1), -f(1, 0), f(0, 0);
  return inv / det;
}

double rel_residual(const Mat& lhs, const Mat& rhs) {
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), 1e-30);
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

inline int slot_state(long idx, int slot, int nslots) {
  return static_cast<int>((idx >> (nslots - 1 - slot)) & 1L) + 1;
}

inline long with_slot_state(long idx, int slot, int nslots, int state) {
  const long mask = 1L << (nslots - 1 - slot);
  return state == 2 ? (idx | mask) : (idx & ~mask);
}

}  // namespace

Mat4 face_r(const Elliptic& e, cx eta, const Weight& m, cx u) {
  const cx sue = e.sigma(u + eta);
  const cx m12 = m.m12(), m21 = m.m21();
  const cx b12 =
      checked_div(e.sigma(u) * e.sigma(m12 - eta), sue * e.sigma(m12),
                  "face R entry");
  const cx b21 =
      checked_div(e.sigma(u) * e.sigma(m21 - eta), sue * e.sigma(m21),
                  "face R entry");
  const cx c12 =
      checked_div(e.sigma(eta) * e.sigma(u + m12), sue * e.sigma(m12),
                  "face R entry");
  const cx c21 =
      checked_div(e.sigma(eta) * e.sigma(u + m21), sue * e.sigma(m21),
                  "face R entry");
  Mat4 r = Mat4::Zero();
  r(0, 0) = 1.0;
  r(3, 3) = 1.0;
  r(1, 1) = b12;  // out (1,2) <- in (1,2)
  r(2, 2) = b21;  // out (2,1) <- in (2,1)
  r(2, 1) = c12;  // out (2,1) <- in (1,2)
  r(1, 2) = c21;  // out (1,2) <- in (2,1)
  return r;
}

Vec2 phi_vec(const Elliptic& e, const Weight& top, int j, cx u) {
  const cx arg = u + 2.0 * top.component(j);
  Vec2 v;
  v(0) = e.theta_j(1, arg);
  v(1) = e.theta_j(2, arg);
  return v;
}

RowVec2 phibar_vec(const Elliptic& e, const Weight& top, int mu, cx u) {
  return inverse_of(phi_matrix(e, top, u)).row(mu - 1);
}

RowVec2 phitilde_vec(const Elliptic& e, cx eta, const Weight& bottom, int mu,
                     cx u) {
  Eigen::Matrix2cd f;
  f.col(0) = phi_vec(e, bottom.shifted(1, eta), 1, u);
  f.col(1) = phi_vec(e, bottom.shifted(2, eta), 2, u);
  return inverse_of(f).row(mu - 1);
}

cx intertwiner_det(const Elliptic& e, const Weight& m, cx u) {
  const Eigen::Matrix2cd f = phi_matrix(e, m, u);
  return f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0);
}

Mat embed_face(const Elliptic& e, cx eta, const Weight& m, cx u, int a, int b,
               const std::vector<int>& shift_slots, int nslots) {
  const long dim = 1L << nslots;
  Mat out = Mat::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    Weight meff = m;
    for (int s : shift_slots) meff = meff.shifted(slot_state(col, s, nslots), -eta);
    const Mat4 r = face_r(e, eta, meff, u);
    const int ia = slot_state(col, a, nslots) - 1;
    const int ib = slot_state(col, b, nslots) - 1;
    for (int oa = 0; oa < 2; ++oa) {
      for (int ob = 0; ob < 2; ++ob) {
        const cx v = r(2 * oa + ob, 2 * ia + ib);
        if (v == cx(0.0)) continue;
        long row = with_slot_state(col, a, nslots, oa + 1);
        row = with_slot_state(row, b, nslots, ob + 1);
        out(row, col) += v;
      }
    }
  }
  return out;
}

double mybe_residual(const Elliptic& e, cx eta, const Weight& m, cx u1, cx u2,
                     cx u3) {
  const std::vector<int> none;
  const Mat lhs = embed_face(e, eta, m, u1 - u2, 0, 1, {2}, 3) *
                  embed_face(e, eta, m, u1 - u3, 0, 2, none, 3) *
                  embed_face(e, eta, m, u2 - u3, 1, 2, {0}, 3);
  const Mat rhs = embed_face(e, eta, m, u2 - u3, 1, 2, none, 3) *
                  embed_face(e, eta, m, u1 - u3, 0, 2, {1}, 3) *
                  embed_face(e, eta, m, u1 - u2, 0, 1, none, 3);
  return rel_residual(lhs, rhs);
}

double face_unitarity_residual(const Elliptic& e, cx eta, const Weight& m,
                               cx u) {
  const Mat4 lhs = face_r(e, eta, m, u) * swap_slots4(face_r(e, eta, m, -u));
  return rel_residual(lhs, Mat4::Identity());
}

double face_crossing_residual(const Elliptic& e, cx eta, const Weight& m,
                              cx u) {
  const Mat4 r = face_r(e, eta, m, u);
  const double scale = std::max(r.cwiseAbs().maxCoeff(), 1e-30);
  const double eps[2] = {1.0, -1.0};
  double worst = 0.0;
  for (int i = 1; i <= 2; ++i) {
    const Weight mi = m.shifted(i, -eta);
    const Mat4 rc = face_r(e, eta, mi, -u - eta);
    const cx pref = checked_div(e.sigma(u) * e.sigma(mi.m21()),
                                e.sigma(u + eta) * e.sigma(m.m21()),
                                "crossing prefactor");
    for (int k = 1; k <= 2; ++k)
      for (int l = 1; l <= 2; ++l)
        for (int j = 1; j <= 2; ++j) {
          const int jb = 3 - j, lb = 3 - l;
          const cx lhs = r(2 * (k - 1) + (l - 1), 2 * (i - 1) + (j - 1));
          const cx rhs = eps[l - 1] * eps[j - 1] * pref *
                         rc(2 * (jb - 1) + (k - 1), 2 * (lb - 1) + (i - 1));
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  }
  return worst / scale;
}

double face_weight_conservation_residual(const Elliptic& e, cx eta,
                                         const Weight& m, cx u) {
  Mat4 h = Mat4::Zero();
  h(0, 0) = 2.0;
  h(3, 3) = -2.0;
  const Mat4 r = face_r(e, eta, m, u);
  return rel_residual(h * r, r * h);
}

double face_vertex_residual(const Elliptic& e, cx eta, const Weight& m,
                            int which, cx u1, cx u2) {
  const Mat4 rb = rbar(e, eta, u1 - u2);
  const Mat4 rf = face_r(e, eta, m, u1 - u2);
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  auto rfe = [&](int k, int l, int i, int j) {
    return rf(2 * (k - 1) + (l - 1), 2 * (i - 1) + (j - 1));
  };
  auto hat = [&](const Weight& w, int a, double sign) {
    return w.shifted(a, sign * eta);
  };
  double worst = 0.0;

  if (which == 0) {
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        const Vec lhs =
            rb * kroneckerProduct(phi_vec(e, m, i, u1),
                                  phi_vec(e, hat(m, i, -1), j, u2))
                     .eval();
        Vec rhs = Vec::Zero(4);
        for (int k = 1; k <= 2; ++k)
          for (int l = 1; l <= 2; ++l)
            rhs += rfe(k, l, i, j) *
                   kroneckerProduct(phi_vec(e, hat(m, l, -1), k, u1),
                                    phi_vec(e, m, l, u2))
                       .eval();
        worst = std::max(worst, rel_residual(lhs, rhs));
      }
    return worst;
  }

  if (which == 1) {
    for (int k = 1; k <= 2; ++k)
      for (int j = 1; j <= 2; ++j) {
        const Mat lhs = kroneckerProduct(phitilde_vec(e, eta, m, k, u1), id2) * rb *
                        kroneckerProduct(id2, phi_vec(e, hat(m, j, 1), j, u2));
        Mat rhs = Mat::Zero(2, 2);
        for (int i = 1; i <= 2; ++i)
          for (int l = 1; l <= 2; ++l) {
            const RowVec2 pt = phitilde_vec(e, eta, hat(m, j, 1), i, u1);
            const Vec2 pc =
                phi_vec(e, hat(hat(m, k, 1), l, 1), l, u2);
            rhs += rfe(k, l, i, j) * (pc * pt);
          }
        worst = std::max(worst, rel_residual(lhs, rhs));
      }
    return worst;
  }

  if (which == 2) {
    for (int k = 1; k <= 2; ++k)
      for (int l = 1; l <= 2; ++l) {
        const Mat lhs = kroneckerProduct(phitilde_vec(e, eta, m, k, u1),
                                         phitilde_vec(e, eta, hat(m, k, 1), l, u2)) *
                        rb;
        Mat rhs = Mat::Zero(1, 4);
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j)
            rhs += rfe(k, l, i, j) *
                   kroneckerProduct(phitilde_vec(e, eta, hat(m, j, 1), i, u1),
                                    phitilde_vec(e, eta, m, j, u2))
                       .eval();
        worst = std::max(worst, rel_residual(lhs, rhs));
      }
    return worst;
  }

  if (which == 3) {
    for (int l = 1; l <= 2; ++l)
      for (int i = 1; i <= 2; ++i) {
        const Mat lhs = kroneckerProduct(id2, phibar_vec(e, m, l, u2)) * rb *
                        kroneckerProduct(phi_vec(e, m, i, u1), id2);
        Mat rhs = Mat::Zero(2, 2);
        for (int k = 1; k <= 2; ++k)
          for (int j = 1; j <= 2; ++j) {
            const Vec2 pc = phi_vec(e, hat(m, l, -1), k, u1);
            const RowVec2 pb = phibar_vec(e, hat(m, i, -1), j, u2);
            rhs += rfe(k, l, i, j) * (pc * pb);
          }
        worst = std::max(worst, rel_residual(lhs, rhs));
      }
    return worst;
  }

  for (int k = 1; k <= 2; ++k)
    for (int l = 1; l <= 2; ++l) {
      const Mat lhs = kroneckerProduct(phibar_vec(e, hat(m, l, -1), k, u1),
                                       phibar_vec(e, m, l, u2)) *
                      rb;
      Mat rhs = Mat::Zero(1, 4);
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
          rhs += rfe(k, l, i, j) *
                 kroneckerProduct(phibar_vec(e, m, i, u1),
                                  phibar_vec(e, hat(m, i, -1), j, u2))
                     .eval();
      worst = std::max(worst, rel_residual(lhs, rhs));
    }
  return worst;
}

cx kminus_face_kernel(const ModelParams& p, int i, cx u) {
  const Elliptic e(p.tau);
  const cx li = (i == 1) ? p.lambda1 : p.lambda2;
  return checked_div(e.sigma(li + p.xi - u), e.sigma(li + p.xi + u),
                     "face boundary kernel");
}

cx kplus_face_kernel(const ModelParams& p, int j, cx u) {
  const Elliptic e(p.tau);
  const cx l12 = p.lambda1 - p.lambda2;
  const cx lj = (j == 1) ? p.lambda1 : p.lambda2;
  const cx sign = (j == 1) ? -p.eta : p.eta;
  return checked_div(e.sigma(l12 + sign) * e.sigma(lj + p.xibar + u + p.eta),
                     e.sigma(l12) * e.sigma(lj + p.xibar - u - p.eta),
                     "dual face boundary kernel");
}

double kminus_reconstruction_residual(const ModelParams& p, cx u) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  Eigen::Matrix2cd rec = Eigen::Matrix2cd::Zero();
  for (int i = 1; i <= 2; ++i) {
    const Vec2 col = phi_vec(e, lam, i, u);
    const RowVec2 row = phibar_vec(e, lam, i, -u);
    rec += kminus_face_kernel(p, i, u) * (col * row);
  }
  return rel_residual(kminus(p, u), rec);
}

double kplus_reconstruction_residual(const ModelParams& p, cx u) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  Eigen::Matrix2cd rec = Eigen::Matrix2cd::Zero();
  for (int j = 1; j <= 2; ++j) {
    const Vec2 col = phi_vec(e, lam, j, -u);
    const RowVec2 row = phitilde_vec(e, p.eta, lam.shifted(j, -p.eta), j, u);
    rec += kplus_face_kernel(p, j, u) * (col * row);
  }
  return rel_residual(kplus(p, u), rec);
}

}  // namespace oxyz
