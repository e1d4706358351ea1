#include "openxyz/fbasis.hpp"

#include <algorithm>
#include <numeric>

#include "openxyz/errors.hpp"
#include "openxyz/face.hpp"

namespace oxyz {

namespace {

constexpr double kConditionCap = 1e12;

cx checked_div(cx num, cx den, const char* what) {
  if (std::abs(den) <= kPoleThreshold) throw NearPole(what);
  return num / den;
}

int find_in(const Perm& w, int value) {
  return static_cast<int>(std::find(w.begin(), w.end(), value) - w.begin());
}

Mat inverse_guarded(const Mat& f) {
  Eigen::PartialPivLU<Mat> lu(f);
  const Mat inv = lu.inverse();
  const double cond = f.cwiseAbs().colwise().sum().maxCoeff() *
                      inv.cwiseAbs().colwise().sum().maxCoeff();
  if (!(cond < kConditionCap)) throw DegenerateF("twist inversion");
  return inv;
}

}  // namespace

std::vector<int> adjacent_word(const Perm& perm) {
  const int n = static_cast<int>(perm.size());
  Perm w(n);
  std::iota(w.begin(), w.end(), 0);
  std::vector<int> word;
  for (int pos = 0; pos < n; ++pos) {
    for (int at = find_in(w, perm[pos]); at > pos; --at) {
      std::swap(w[at - 1], w[at]);
      word.push_back(at - 1);
    }
  }
  return word;
}

Mat exchange_operator_word(const ModelParams& p, const Weight& l,
                           const Perm& tuple, const std::vector<int>& word) {
  const Elliptic e(p.tau);
  const int n = p.N();
  const long dim = 1L << n;
  Perm w = tuple;
  Mat acc = Mat::Identity(dim, dim);
  for (int beta : word) {
    const std::vector<int> spectators(w.begin(), w.begin() + beta);
    const Mat factor = embed_face(e, p.eta, l, p.z[w[beta]] - p.z[w[beta + 1]],
                                  w[beta], w[beta + 1], spectators, n);
    acc = factor * acc;
    std::swap(w[beta], w[beta + 1]);
  }
  return acc;
}

Mat exchange_operator(const ModelParams& p, const Weight& l, const Perm& perm) {
  Perm tuple(perm.size());
  std::iota(tuple.begin(), tuple.end(), 0);
  return exchange_operator_word(p, l, tuple, adjacent_word(perm));
}

Mat f_matrix_tuple(const ModelParams& p, const Weight& l, const Perm& tuple) {
  const int n = p.N();
  const long dim = 1L << n;
  Mat f = Mat::Zero(dim, dim);
  Perm pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  do {
    std::vector<int> visit(n);
    for (int i = 0; i < n; ++i) visit[i] = tuple[pos[i]];
    // A valid projector sequence is non-decreasing along the visit order and
    // must step up exactly where the visited site index drops.  With two
    // values this pins the step to the unique descent, or leaves it free
    // when the visit order is ascending.
    int descent = -1;
    bool dead = false;
    for (int i = 0; i + 1 < n; ++i) {
      if (visit[i + 1] < visit[i]) {
        if (descent >= 0) {
          dead = true;
          break;
        }
        descent = i + 1;
      }
    }
    if (dead) continue;
    const Mat r = exchange_operator_word(p, l, tuple, adjacent_word(pos));
    const auto state_for = [&](int t) {
      long s = 0;
      for (int k = t; k < n; ++k) s |= 1L << (n - 1 - visit[k]);
      return s;
    };
    if (descent >= 0) {
      f.row(state_for(descent)) += r.row(state_for(descent));
    } else {
      for (int t = 0; t <= n; ++t) f.row(state_for(t)) += r.row(state_for(t));
    }
  } while (std::next_permutation(pos.begin(), pos.end()));
  return f;
}

Mat f_matrix(const ModelParams& p, const Weight& l) {
  Perm tuple(p.N());
  std::iota(tuple.begin(), tuple.end(), 0);
  return f_matrix_tuple(p, l, tuple);
}

Mat twisted_one_row(const ModelParams& p, const Weight& l, cx u, int i,
                    int j) {
  return f_matrix(p, l) * face_one_row(p, l, u, i, j) *
         inverse_guarded(f_matrix(p, l.shifted(j, -p.eta)));
}

Mat twisted_t22(const ModelParams& p, const Weight& l, cx u) {
  const Elliptic e(p.tau);
  const int n = p.N();
  const long dim = 1L << n;
  Mat t = Mat::Zero(dim, dim);
  for (long s = 0; s < dim; ++s) {
    const int n2 = __builtin_popcountll(static_cast<unsigned long long>(s));
    const double n1 = static_cast<double>(n - n2);
    cx val = checked_div(e.sigma(l.m21() - p.eta),
                         e.sigma(l.m21() - p.eta + p.eta * n1),
                         "diagonal block scale");
    for (int k = 0; k < n; ++k)
      if (((s >> (n - 1 - k)) & 1) == 0)
        val *= checked_div(e.sigma(u - p.z[k]), e.sigma(u - p.z[k] + p.eta),
                           "diagonal block site ratio");
    t(s, s) = val;
  }
  return t;
}

Mat twisted_t21(const ModelParams& p, const Weight& l, cx u) {
  const Elliptic e(p.tau);
  const int n = p.N();
  const long dim = 1L << n;
  Mat t = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const cx gi = checked_div(
        e.sigma(p.eta) * e.sigma(u - p.z[i] + l.m12()),
        e.sigma(u - p.z[i] + p.eta) * e.sigma(l.m12()), "lowering coefficient");
    const long bit = 1L << (n - 1 - i);
    for (long s = 0; s < dim; ++s) {
      if ((s & bit) == 0) continue;
      cx amp = gi;
      for (int j = 0; j < n; ++j) {
        if (j == i || ((s >> (n - 1 - j)) & 1) != 0) continue;
        amp *= checked_div(
            e.sigma(u - p.z[j]) * e.sigma(p.z[i] - p.z[j] + p.eta),
            e.sigma(u - p.z[j] + p.eta) * e.sigma(p.z[i] - p.z[j]),
            "lowering dressing");
      }
      t(s ^ bit, s) += amp;
    }
  }
  return t;
}

Mat twisted_t12(const ModelParams& p, const Weight& l, cx u) {
  const Elliptic e(p.tau);
  const int n = p.N();
  const long dim = 1L << n;
  Mat t = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const long bit = 1L << (n - 1 - i);
    for (long s = 0; s < dim; ++s) {
      if ((s & bit) != 0) continue;
      const long out = s | bit;
      const int n2 =
          __builtin_popcountll(static_cast<unsigned long long>(out));
      const cx hdiff = static_cast<double>(n - 2 * n2);
      cx amp = checked_div(e.sigma(l.m21() - p.eta),
                           e.sigma(l.m21() + p.eta * hdiff), "raising scale");
      amp *= checked_div(
          e.sigma(p.eta) * e.sigma(u - p.z[i] + l.m21() + p.eta +
                                   p.eta * hdiff),
          e.sigma(u - p.z[i] + p.eta) *
              e.sigma(l.m21() + p.eta + p.eta * hdiff),
          "raising coefficient");
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (((s >> (n - 1 - j)) & 1) == 0)
          amp *= checked_div(e.sigma(u - p.z[j]), e.sigma(u - p.z[j] + p.eta),
                             "raising dressing");
        else
          amp *= checked_div(e.sigma(p.z[j] - p.z[i] + p.eta),
                             e.sigma(p.z[j] - p.z[i]), "raising dressing");
      }
      t(out, s) += amp;
    }
  }
  return t;
}

Mat creation_minus(const ModelParams& p, const Weight& m, cx u) {
  const Elliptic e(p.tau);
  const int n = p.N();
  const long dim = 1L << n;
  // The scale carries the label in the ungraded normalization, a constant
  // -eta*N/2 away from the ladder label on both components.
  cx pref = checked_div(
      e.sigma(m.m12()),
      e.sigma(m.m1 - 0.5 * p.eta * static_cast<double>(n) - p.lambda2),
      "creation scale");
  for (int k = 0; k < n; ++k)
    pref *= checked_div(e.sigma(u + p.z[k]), e.sigma(u + p.z[k] + p.eta),
                        "creation crossing factor");
  Mat t = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const cx gi = checked_div(
        e.sigma(p.lambda1 + p.xi - p.z[i]) * e.sigma(p.lambda2 + p.xi + p.z[i]) *
            e.sigma(2.0 * u) * e.sigma(p.eta),
        e.sigma(p.lambda1 + p.xi + u) * e.sigma(p.lambda2 + p.xi + u) *
            e.sigma(u - p.z[i] + p.eta) * e.sigma(u + p.z[i]),
        "creation coefficient");
    const long bit = 1L << (n - 1 - i);
    for (long s = 0; s < dim; ++s) {
      if ((s & bit) == 0) continue;
      cx amp = pref * gi;
      for (int j = 0; j < n; ++j) {
        if (j == i || ((s >> (n - 1 - j)) & 1) != 0) continue;
        amp *= checked_div(
            e.sigma(u - p.z[j]) * e.sigma(u + p.z[j] + p.eta) *
                e.sigma(p.z[i] - p.z[j] + p.eta),
            e.sigma(u - p.z[j] + p.eta) * e.sigma(u + p.z[j]) *
                e.sigma(p.z[i] - p.z[j]),
            "creation dressing");
      }
      t(s ^ bit, s) += amp;
    }
  }
  return t;
}

Mat creation_plus(const ModelParams& p, const Weight& m, cx u) {
  const Elliptic e(p.tau);
  const int n = p.N();
  const long dim = 1L << n;
  cx pref = checked_div(
      e.sigma(m.m21()),
      e.sigma(m.m2 + 0.5 * p.eta * static_cast<double>(n) - p.lambda1),
      "creation scale");
  for (int k = 0; k < n; ++k)
    pref *= checked_div(e.sigma(u + p.z[k]), e.sigma(u + p.z[k] + p.eta),
                        "creation crossing factor");
  Mat t = Mat::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const cx gi = checked_div(
        e.sigma(p.lambda2 + p.xibar - p.z[i]) *
            e.sigma(p.lambda1 + p.xibar + p.z[i]) *
            e.sigma(2.0 * u + 2.0 * p.eta) * e.sigma(p.eta),
        e.sigma(p.lambda1 + p.xibar - u - p.eta) *
            e.sigma(p.lambda2 + p.xibar - u - p.eta) * e.sigma(u + p.z[i]) *
            e.sigma(u - p.z[i] + p.eta),
        "creation coefficient");
    const long bit = 1L << (n - 1 - i);
    for (long s = 0; s < dim; ++s) {
      if ((s & bit) != 0) continue;
      cx amp = pref * gi;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (((s >> (n - 1 - j)) & 1) == 0)
          amp *= checked_div(
              e.sigma(u - p.z[j]) * e.sigma(u + p.z[j] + p.eta),
              e.sigma(u - p.z[j] + p.eta) * e.sigma(u + p.z[j]),
              "creation dressing");
        else
          amp *= checked_div(e.sigma(p.z[j] - p.z[i] + p.eta),
                             e.sigma(p.z[j] - p.z[i]), "creation dressing");
      }
      t(s | bit, s) += amp;
    }
  }
  return t;
}

cx scalar_product_fbasis(const ModelParams& p, ScalarKind kind,
                         const std::vector<cx>& u, const std::vector<cx>& v) {
  const int m = static_cast<int>(u.size());
  const long dim = 1L << p.N();
  const Weight lam = p.lambda();

  const auto minus_ladder_u = [&](Vec state) {
    for (int a = 1; a <= m; ++a) {
      const Weight w =
          lam.shifted(1, -2.0 * p.eta * static_cast<double>(a - 1));
      state = creation_minus(p, w, u[a - 1]) * state;
    }
    return state;
  };
  const auto plus_ladder_u = [&](Vec state) {
    for (int a = 1; a <= m; ++a) {
      const Weight w = lam.shifted(2, 2.0 * p.eta * static_cast<double>(a - 1));
      state = creation_plus(p, w, u[a - 1]) * state;
    }
    return state;
  };

  Vec ket;
  switch (kind) {
    case ScalarKind::I_II: {
      ket = Vec::Unit(dim, dim - 1);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = creation_minus(
                  p, lam.shifted(1, 2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = minus_ladder_u(ket);
      return ket(0);
    }
    case ScalarKind::II_I: {
      ket = Vec::Unit(dim, 0);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = creation_plus(
                  p, lam.shifted(2, -2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = plus_ladder_u(ket);
      return ket(dim - 1);
    }
    case ScalarKind::I_I: {
      ket = Vec::Unit(dim, 0);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = creation_plus(
                  p, lam.shifted(1, 2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = minus_ladder_u(ket);
      return ket(0);
    }
    default: {
      ket = Vec::Unit(dim, dim - 1);
      for (int a = static_cast<int>(v.size()); a >= 1; --a)
        ket = creation_minus(
                  p, lam.shifted(2, -2.0 * p.eta * static_cast<double>(a)),
                  v[a - 1]) *
              ket;
      ket = plus_ladder_u(ket);
      return ket(dim - 1);
    }
  }
}

}  // namespace oxyz
