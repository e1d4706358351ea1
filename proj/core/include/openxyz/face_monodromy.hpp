#pragma once

#include <vector>

#include "openxyz/face.hpp"

namespace oxyz {

// Which pairing of the two Bethe-state families a scalar product takes.
enum class ScalarKind { I_II, II_I, I_I, II_II };

// Content of a basis state: sum of the fundamental vectors of its indices,
// n1 * 1^ + (N - n1) * 2^ expressed through the number of 1-indices.
Weight state_content(long s, int sites, cx eta_unused = cx(0.0));

// One-row face monodromy entry T_F(l|u)^i_j on the 2^N quantum space. The
// dynamical argument of the site-k factor is shifted by the content of the
// already-produced output prefix.
Mat face_one_row(const ModelParams& p, const Weight& l, cx u, int i, int j);

// Double-row operators obtained by dressing the vertex double rows with
// intertwiners. nu/mu (resp. j/i) are the face-type matrix entry labels.
Mat sandwich_minus(const ModelParams& p, const Weight& m, cx u, int nu,
                   int mu);
Mat sandwich_plus(const ModelParams& p, const Weight& m, cx u, int j, int i);

// The same operators assembled from one-row face monodromies; the (2,1)
// entry of the minus family and the (1,2) entry of the plus family.
Mat double_row_minus(const ModelParams& p, const Weight& m, cx u);
Mat double_row_plus(const ModelParams& p, const Weight& m, cx u);

// Reference states and their duals (duals are bilinear rows stored as
// column vectors; pair them with a transpose, no conjugation).
Vec vacuum_one(const ModelParams& p);
Vec vacuum_two(const ModelParams& p);
Vec dual_vacuum_one(const ModelParams& p);
Vec dual_vacuum_two(const ModelParams& p);

// Ladder states: products of double-row operators on the reference states.
Vec bethe_state_one(const ModelParams& p, const std::vector<cx>& v);
Vec bethe_state_two(const ModelParams& p, const std::vector<cx>& v);
Vec dual_state_one(const ModelParams& p, const std::vector<cx>& u);
Vec dual_state_two(const ModelParams& p, const std::vector<cx>& u);

// Scalar products of a dual ladder state with a ladder state, evaluated in
// the vertex picture (intertwiner sandwiches applied to reference states).
cx scalar_product_sandwich(const ModelParams& p, ScalarKind kind,
                           const std::vector<cx>& u, const std::vector<cx>& v);

// The same quantities evaluated through one-row face monodromy combinations
// between the extremal spin states.
cx scalar_product_ladder(const ModelParams& p, ScalarKind kind,
                         const std::vector<cx>& u, const std::vector<cx>& v);

}  // namespace oxyz
