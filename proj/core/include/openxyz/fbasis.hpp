#pragma once

#include <vector>

#include "openxyz/face_monodromy.hpp"

namespace oxyz {

// A permutation of the quantum sites, stored as a tuple: perm[pos] is the
// 0-based site occupying position pos.
using Perm = std::vector<int>;

// Minimal word of adjacent transpositions (0-based positions) that turns the
// identity tuple into `perm` when applied left to right.
std::vector<int> adjacent_word(const Perm& perm);

// Composite exchange operator on the N-fold quantum space associated with the
// word `word` read left to right on the ambient tuple `tuple`.  Each letter
// beta contributes the face R-matrix acting on the sites currently at
// positions (beta, beta+1), evaluated at the difference of their
// inhomogeneities, with the dynamical weight shifted by the content of the
// sites at positions 0..beta-1.
Mat exchange_operator_word(const ModelParams& p, const Weight& l,
                           const Perm& tuple, const std::vector<int>& word);

// Exchange operator for `perm` on the identity tuple, via a minimal word.
Mat exchange_operator(const ModelParams& p, const Weight& l, const Perm& perm);

// Factorizing twist on the quantum space for the ambient tuple `tuple`
// (sites listed in visit order together with their inhomogeneities).  The
// matrix is lower triangular with nonzero diagonal in the binary site basis.
Mat f_matrix_tuple(const ModelParams& p, const Weight& l, const Perm& tuple);

// Twist for the natural site order 1..N.
Mat f_matrix(const ModelParams& p, const Weight& l);

// One-row face monodromy block conjugated by the twist:
//   F(l) T(l|u)^i_j F(l - eta*jhat)^{-1}.
Mat twisted_one_row(const ModelParams& p, const Weight& l, cx u, int i, int j);

// Closed forms of the twisted one-row blocks.  The diagonal block acts as a
// product of single-site ratios with a content-dependent scalar; the
// off-diagonal blocks are sums of single-site hopping terms dressed by
// diagonal factors on the remaining sites.
Mat twisted_t22(const ModelParams& p, const Weight& l, cx u);
Mat twisted_t21(const ModelParams& p, const Weight& l, cx u);
Mat twisted_t12(const ModelParams& p, const Weight& l, cx u);

// Polarization-free forms of the twisted double-row creation operators.
// The label m tracks the content sector the operator acts on (base weight
// is the model's lambda); the matrix is valid on columns whose content c
// satisfies m = lambda - eta*c (minus family) or m = lambda + eta*c (plus
// family).
Mat creation_minus(const ModelParams& p, const Weight& m, cx u);
Mat creation_plus(const ModelParams& p, const Weight& m, cx u);

// Scalar products of ladder states evaluated entirely with the
// polarization-free creation operators.  The reference states are invariant
// under the twist, so this must agree with the untwisted ladder route.
cx scalar_product_fbasis(const ModelParams& p, ScalarKind kind,
                         const std::vector<cx>& u, const std::vector<cx>& v);

}  // namespace oxyz
