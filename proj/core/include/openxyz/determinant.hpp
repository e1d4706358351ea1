#pragma once

#include <vector>

#include "openxyz/bethe.hpp"

namespace oxyz {

// Value of a determinant formula together with the spectral condition
// estimate of the matrix whose determinant entered it.
struct DetValue {
  cx value;
  double condition;
};

// N x N matrix of the reflecting-end partition-function formulas. The kind
// selects the ladder family: I_II or II_I.
Mat partition_matrix(const ModelParams& p, ScalarKind kind,
                     const std::vector<cx>& ubar);

// Reflecting-end domain-wall partition function over the merged parameter
// list ubar (size N = p.N()); equals the mixed-kind ladder scalar product
// with ubar = (u_1..u_M, v_1..v_M).
DetValue partition_function(const ModelParams& p, ScalarKind kind,
                            const std::vector<cx>& ubar);

// Boundary coefficient products entering the two-term H combinations,
// which in 1..4.
cx boundary_coeff(const ModelParams& p, int which, cx u);

// Two-term combination entering column j (0-based) of the on-shell
// scalar-product matrices; kind must be I_I or II_II.
cx h_function(const ModelParams& p, ScalarKind kind, int j, cx u,
              const std::vector<cx>& v);

// M x M matrix of the on-shell scalar-product representation.
Mat scalar_matrix(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& u, const std::vector<cx>& v);

// Scalar product of the dual ladder state at {u} with the Bethe state at
// {v}. The closed form holds only for on-shell {v}; the gate throws
// OffShellRoots unless force is set.
DetValue scalar_product_det(const ModelParams& p, ScalarKind kind,
                            const std::vector<cx>& u,
                            const std::vector<cx>& v, bool force = false);

// M x M matrix of the norm formulas: boundary-dressed log-derivatives of
// the equation ratios.
Mat gaudin_matrix(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& v);

// Squared norm of the on-shell Bethe state, the u -> v limit of the scalar
// product.
DetValue norm_det(const ModelParams& p, ScalarKind kind,
                  const std::vector<cx>& v, bool force = false);

// True when the determinant representations apply to this root set: no pair
// collision (difference or reflected sum near the period lattice) and no
// root at a reflection-symmetric point, where the doubling blocks vanish.
bool roots_generic(const ModelParams& p, const std::vector<cx>& v);

}  // namespace oxyz
