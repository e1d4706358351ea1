#pragma once

#include <vector>

#include "openxyz/vertex.hpp"

namespace oxyz {

using Vec2 = Eigen::Vector2cd;
using RowVec2 = Eigen::RowVector2cd;

// Dynamical R-matrix on two slots in the basis (11,12,21,22); the row is the
// outgoing index pair, the column the incoming one.
Mat4 face_r(const Elliptic& e, cx eta, const Weight& m, cx u);

// Intertwiner column phi_{top, top - eta j}(u); components k = 1,2.
Vec2 phi_vec(const Elliptic& e, const Weight& top, int j, cx u);
// Row mu of the inverse of [phi_{top,top-eta 1}(u), phi_{top,top-eta 2}(u)].
RowVec2 phibar_vec(const Elliptic& e, const Weight& top, int mu, cx u);
// Row mu of the inverse of [phi_{bot+eta 1,bot}(u), phi_{bot+eta 2,bot}(u)].
RowVec2 phitilde_vec(const Elliptic& e, cx eta, const Weight& bottom, int mu,
                     cx u);
// Determinant of the 2x2 intertwiner matrix with columns j = 1,2.
cx intertwiner_det(const Elliptic& e, const Weight& m, cx u);

// Embedding of the face R on slots (a,b) of an nslots register with the
// weight shifted by -eta times the content of shift_slots (which must be
// untouched by the factor, so their state is read off the column index).
Mat embed_face(const Elliptic& e, cx eta, const Weight& m, cx u, int a, int b,
               const std::vector<int>& shift_slots, int nslots);

double mybe_residual(const Elliptic& e, cx eta, const Weight& m, cx u1, cx u2,
                     cx u3);
double face_unitarity_residual(const Elliptic& e, cx eta, const Weight& m,
                               cx u);
double face_crossing_residual(const Elliptic& e, cx eta, const Weight& m,
                              cx u);
double face_weight_conservation_residual(const Elliptic& e, cx eta,
                                         const Weight& m, cx u);

// The five exchange relations tying the vertex R to the face R through the
// intertwiners; which selects the variant (0 = column/column, 1 = mixed
// tilde/column, 2 = tilde/tilde, 3 = mixed bar/column, 4 = bar/bar).
double face_vertex_residual(const Elliptic& e, cx eta, const Weight& m,
                            int which, cx u1, cx u2);

// Residuals of the boundary matrices against their intertwiner sandwiches
// with diagonal face-type kernels.
double kminus_reconstruction_residual(const ModelParams& p, cx u);
double kplus_reconstruction_residual(const ModelParams& p, cx u);

// Diagonal face-type boundary kernels.
cx kminus_face_kernel(const ModelParams& p, int i, cx u);
cx kplus_face_kernel(const ModelParams& p, int j, cx u);

}  // namespace oxyz
