#include "openxyz/face_monodromy.hpp"

#include <functional>

#include "openxyz/errors.hpp"

namespace oxyz {

namespace {

cx checked_div(cx num, cx den, const char* what) {
  if (std::abs(den) <= kPoleThreshold) throw NearPole(what);
  return num / den;
}

// prod_k sigma(u+z_k)/sigma(u+z_k+eta)
cx crossing_product(const ModelParams& p, const Elliptic& e, cx u) {
  cx prod = 1.0;
  for (const cx& zk : p.z)
    prod *= checked_div(e.sigma(u + zk), e.sigma(u + zk + p.eta),
                        "double-row crossing product");
  return prod;
}

Vec product_state(const ModelParams& p,
                  const std::function<Vec2(int)>& site_vec) {
  const int N = p.N();
  const long dim = 1L << N;
  std::vector<Vec2> site(N);
  for (int k = 0; k < N; ++k) site[k] = site_vec(k);
  Vec out(dim);
  for (long s = 0; s < dim; ++s) {
    cx amp = 1.0;
    for (int k = 0; k < N; ++k)
      amp *= site[k](static_cast<int>((s >> (N - 1 - k)) & 1L));
    out(s) = amp;
  }
  return out;
}

}  // namespace

Weight state_content(long s, int sites, cx) {
  int n1 = 0;
  for (int k = 0; k < sites; ++k)
    if (((s >> k) & 1L) == 0) ++n1;
  const double coeff = static_cast<double>(2 * n1 - sites);
  return Weight{}.shifted(1, coeff);
}

Mat face_one_row(const ModelParams& p, const Weight& l, cx u, int i, int j) {
  const Elliptic e(p.tau);
  const int N = p.N();
  const long dim = 1L << N;
  Mat out = Mat::Zero(dim, dim);

  // Site-k weights depend only on how many 1-indices the output prefix has.
  std::vector<std::vector<Mat4>> cache(N);
  for (int k = 0; k < N; ++k) {
    cache[k].resize(k + 1);
    for (int n1 = 0; n1 <= k; ++n1) {
      const Weight meff =
          l.shifted(1, -p.eta * static_cast<double>(2 * n1 - k));
      cache[k][n1] = face_r(e, p.eta, meff, u - p.z[k]);
    }
  }

  struct Frame {
    int k;
    int aux;
    int ones;
    long outbits;
    cx amp;
  };
  std::vector<Frame> stack;
  stack.reserve(4 * N);
  for (long sin = 0; sin < dim; ++sin) {
    stack.push_back({0, j - 1, 0, 0L, cx(1.0)});
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (f.k == N) {
        if (f.aux == i - 1) out(f.outbits, sin) += f.amp;
        continue;
      }
      const int ik = static_cast<int>((sin >> (N - 1 - f.k)) & 1L);
      const Mat4& r = cache[f.k][f.ones];
      for (int aout = 0; aout < 2; ++aout) {
        for (int sout = 0; sout < 2; ++sout) {
          const cx v = r(2 * aout + sout, 2 * f.aux + ik);
          if (v == cx(0.0)) continue;
          stack.push_back({f.k + 1, aout, f.ones + (sout == 0 ? 1 : 0),
                           f.outbits | (static_cast<long>(sout)
                                        << (N - 1 - f.k)),
                           f.amp * v});
        }
      }
    }
  }
  return out;
}

Mat sandwich_minus(const ModelParams& p, const Weight& m, cx u, int nu,
                   int mu) {
  const Elliptic e(p.tau);
  const LaxBlock tt = double_row_monodromy(p, u);
  const RowVec2 pt = phitilde_vec(e, p.eta, m.shifted(mu, -p.eta), nu, u);
  const Vec2 pc = phi_vec(e, m, mu, -u);
  Mat out = Mat::Zero(tt.block[0][0].rows(), tt.block[0][0].cols());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out += pt(a) * pc(b) * tt.block[a][b];
  return out;
}

Mat sandwich_plus(const ModelParams& p, const Weight& m, cx u, int j, int i) {
  const Elliptic e(p.tau);
  const LaxBlock tt = blocks_of(dual_double_row_t0_full(p, u), p.N());
  const Weight top = m.shifted(j, -p.eta).shifted(i, p.eta);
  const Vec2 pc = phi_vec(e, top, i, u);
  const RowVec2 pb = phibar_vec(e, m, j, -u);
  const cx mjk = (j == 1) ? m.m12() : m.m21();
  const cx pref =
      checked_div(e.sigma(mjk), e.sigma(mjk - p.eta), "dual double-row scale");
  Mat out = Mat::Zero(tt.block[0][0].rows(), tt.block[0][0].cols());
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out += pc(a) * pb(b) * tt.block[a][b];
  return pref * out;
}

Mat double_row_minus(const ModelParams& p, const Weight& m, cx u) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  const cx pref = checked_div(e.sigma(m.m21()), e.sigma(lam.m21()),
                              "double-row minus scale") *
                  crossing_product(p, e, u);
  const cx c1 = checked_div(e.sigma(p.lambda1 + p.xi - u),
                            e.sigma(p.lambda1 + p.xi + u), "double-row minus");
  const cx c2 = checked_div(e.sigma(p.lambda2 + p.xi - u),
                            e.sigma(p.lambda2 + p.xi + u), "double-row minus");
  const Mat t21 = face_one_row(p, lam, u, 2, 1);
  const Mat t22r = face_one_row(p, lam.shifted(2, p.eta), -u - p.eta, 2, 2);
  const Mat t22 = face_one_row(p, lam, u, 2, 2);
  const Mat t21r = face_one_row(p, lam.shifted(1, p.eta), -u - p.eta, 2, 1);
  return pref * (c1 * t21 * t22r - c2 * t22 * t21r);
}

Mat double_row_plus(const ModelParams& p, const Weight& m, cx u) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  const cx pref = crossing_product(p, e, u);
  const cx c1 = checked_div(
      e.sigma(lam.m12() - p.eta) * e.sigma(p.lambda1 + p.xibar + u + p.eta),
      e.sigma(m.m12() - p.eta) * e.sigma(p.lambda1 + p.xibar - u - p.eta),
      "double-row plus");
  const cx c2 = checked_div(
      e.sigma(lam.m21() - p.eta) * e.sigma(p.lambda2 + p.xibar + u + p.eta),
      e.sigma(m.m21() + p.eta) * e.sigma(p.lambda2 + p.xibar - u - p.eta),
      "double-row plus");
  const Weight m2 = m.shifted(2, 2.0 * p.eta);
  const Weight m1 = m.shifted(2, p.eta);
  const Mat t12 = face_one_row(p, m2, u, 1, 2);
  const Mat t22r = face_one_row(p, m1, -u - p.eta, 2, 2);
  const Mat t22 = face_one_row(p, m2, u, 2, 2);
  const Mat t12r = face_one_row(p, m1, -u - p.eta, 1, 2);
  return pref * (c1 * t12 * t22r - c2 * t22 * t12r);
}

Vec vacuum_one(const ModelParams& p) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  const int N = p.N();
  return product_state(p, [&](int k) {
    const Weight top = lam.shifted(1, p.eta * static_cast<double>(N - k));
    return phi_vec(e, top, 1, p.z[k]);
  });
}

Vec vacuum_two(const ModelParams& p) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  return product_state(p, [&](int k) {
    const Weight top = lam.shifted(2, -p.eta * static_cast<double>(k));
    return phi_vec(e, top, 2, p.z[k]);
  });
}

Vec dual_vacuum_one(const ModelParams& p) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  return product_state(p, [&](int k) {
    const Weight bottom = lam.shifted(1, -p.eta * static_cast<double>(k + 1));
    return Vec2(phitilde_vec(e, p.eta, bottom, 1, p.z[k]).transpose());
  });
}

Vec dual_vacuum_two(const ModelParams& p) {
  const Elliptic e(p.tau);
  const Weight lam = p.lambda();
  const int N = p.N();
  return product_state(p, [&](int k) {
    const Weight bottom =
        lam.shifted(2, p.eta * static_cast<double>(N - 1 - k));
    return Vec2(phitilde_vec(e, p.eta, bottom, 2, p.z[k]).transpose());
  });
}

Vec bethe_state_one(const ModelParams& p, const std::vector<cx>& v) {
  const int m = static_cast<int>(v.size());
  Vec state = vacuum_one(p);
  for (int a = m; a >= 1; --a) {
    const Weight w = p.lambda().shifted(1, 2.0 * p.eta * static_cast<double>(a));
    state = sandwich_plus(p, w, v[a - 1], 1, 2) * state;
  }
  return state;
}

Vec bethe_state_two(const ModelParams& p, const std::vector<cx>& v) {
  const int m = static_cast<int>(v.size());
  Vec state = vacuum_two(p);
  for (int a = m; a >= 1; --a) {
    const Weight w =
        p.lambda().shifted(2, -2.0 * p.eta * static_cast<double>(a));
    state = sandwich_minus(p, w, v[a - 1], 2, 1) * state;
  }
  return state;
}

Vec dual_state_one(const ModelParams& p, const std::vector<cx>& u) {
  const int m = static_cast<int>(u.size());
  Vec row = dual_vacuum_one(p);
  for (int a = m; a >= 1; --a) {
    const Weight w =
        p.lambda().shifted(1, -2.0 * p.eta * static_cast<double>(a - 1));
    row = sandwich_minus(p, w, u[a - 1], 2, 1).transpose() * row;
  }
  return row;
}

Vec dual_state_two(const ModelParams& p, const std::vector<cx>& u) {
  const int m = static_cast<int>(u.size());
  Vec row = dual_vacuum_two(p);
  for (int a = m; a >= 1; --a) {
    const Weight w =
        p.lambda().shifted(2, 2.0 * p.eta * static_cast<double>(a - 1));
    row = sandwich_plus(p, w, u[a - 1], 1, 2).transpose() * row;
  }
  return row;
}

cx scalar_product_sandwich(const ModelParams& p, ScalarKind kind,
                           const std::vector<cx>& u,
                           const std::vector<cx>& v) {
  switch (kind) {
    case ScalarKind::I_II:
      return (dual_state_one(p, u).transpose() * bethe_state_two(p, v))
          .value();
    case ScalarKind::II_I:
      return (dual_state_two(p, u).transpose() * bethe_state_one(p, v))
          .value();
    case ScalarKind::I_I:
      return (dual_state_one(p, u).transpose() * bethe_state_one(p, v))
          .value();
    default:
      return (dual_state_two(p, u).transpose() * bethe_state_two(p, v))
          .value();
  }
}

cx scalar_product_ladder(const ModelParams& p, ScalarKind kind,
                         const std::vector<cx>& u, const std::vector<cx>& v) {
  const int m = static_cast<int>(u.size());
  const long dim = 1L << p.N();
  const Weight lam = p.lambda();
  Vec ket;

  const auto minus_ladder_u = [&](Vec state) {
    for (int a = 1; a <= m; ++a) {
      const Weight w =
          lam.shifted(1, -2.0 * p.eta * static_cast<double>(a - 1));
      state = double_row_minus(p, w, u[a - 1]) * state;
    }
    return state;
  };
  const auto plus_ladder_u = [&](Vec state) {
    for (int a = 1; a <= m; ++a) {
      const Weight w = lam.shifted(2, 2.0 * p.eta * static_cast<double>(a - 1));
      state = double_row_plus(p, w, u[a - 1]) * state;
    }
    return state;
  };

  switch (kind) {
    case ScalarKind::I_II: {
      ket = Vec::Unit(dim, dim - 1);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = double_row_minus(
                  p, lam.shifted(1, 2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = minus_ladder_u(ket);
      return ket(0);
    }
    case ScalarKind::II_I: {
      ket = Vec::Unit(dim, 0);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = double_row_plus(
                  p, lam.shifted(2, -2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = plus_ladder_u(ket);
      return ket(dim - 1);
    }
    case ScalarKind::I_I: {
      ket = Vec::Unit(dim, 0);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = double_row_plus(
                  p, lam.shifted(1, 2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = minus_ladder_u(ket);
      return ket(0);
    }
    default: {
      ket = Vec::Unit(dim, dim - 1);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = double_row_minus(
                  p, lam.shifted(2, -2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = plus_ladder_u(ket);
      return ket(dim - 1);
    }
  }
}

}  // namespace oxyz
