#pragma once

#include <Eigen/Dense>

#include "openxyz/model.hpp"

namespace oxyz {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// 2x2 auxiliary-space matrix of operators on the 2^N quantum space;
// block[i][j] is the entry with auxiliary out-index i+1 and in-index j+1.
struct LaxBlock {
  Mat block[2][2];
};

// Eight-vertex R-matrix on V (x) V in the basis (11,12,21,22).
Mat4 rbar(const Elliptic& e, cx eta, cx u);

// Non-diagonal boundary matrices k0 + kx sx + ky sy + kz sz.
Mat2 kminus(const ModelParams& p, cx u);
Mat2 kplus(const ModelParams& p, cx u);

// Dense embeddings on a register of nslots two-state slots. Slot 0 is the
// most significant index; basis |i_1...i_n> maps to sum (i_k - 1) 2^(n-k).
Mat embed_two_slot(const Mat4& m, int a, int b, int nslots);
Mat embed_one_slot(const Mat2& m, int a, int nslots);

// Partial transpose in the auxiliary (slot 0) space of an operator on
// aux (x) quantum, given the quantum dimension.
Mat aux_transpose(const Mat& full, long quantum_dim);

// One-row monodromy R_{0N}(u-z_N)...R_{01}(u-z_1) on aux (x) V^(x)N.
Mat one_row_monodromy_full(const ModelParams& p, cx u);
// hatT(u) = T(-u)^{-1}; throws SingularInverse when cond(T(-u)) > 1e12.
Mat hat_monodromy_full(const ModelParams& p, cx u);
// Double-row monodromy T(u) K^-_0(u) hatT(u).
Mat double_row_full(const ModelParams& p, cx u);
// The t0-transposed dual double-row product T^t0 (K^+)^t0 hatT^t0.
Mat dual_double_row_t0_full(const ModelParams& p, cx u);
// Dual double-row monodromy itself (t0-transpose of the above).
Mat dual_double_row_full(const ModelParams& p, cx u);

LaxBlock blocks_of(const Mat& full, int N);
LaxBlock one_row_monodromy(const ModelParams& p, cx u);
LaxBlock hat_monodromy(const ModelParams& p, cx u);
LaxBlock double_row_monodromy(const ModelParams& p, cx u);
LaxBlock dual_double_row(const ModelParams& p, cx u);

// tau(u) = tr_0( K^+(u) TT(u) ) as a 2^N x 2^N matrix.
Mat transfer_matrix(const ModelParams& p, cx u);

// Scale-free residuals of the structural equations.
double qybe_residual(const Elliptic& e, cx eta, cx u1, cx u2, cx u3);
double rbar_unitarity_residual(const Elliptic& e, cx eta, cx u);
double re_residual(const ModelParams& p, cx u1, cx u2);
double dual_re_residual(const ModelParams& p, cx u1, cx u2);

}  // namespace oxyz
