#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "isoplate/dgspace.hpp"
#include "isoplate/mesh.hpp"
#include "isoplate/stiefel.hpp"

namespace isoplate {

using SpMat = Eigen::SparseMatrix<double>;

struct PenaltyParams {
  double eta0 = 100.0;
  double eta1 = 100.0;
};

/// Dirichlet data: y_D prescribes the deformation trace, G_D the full normal
/// derivative (grad y) n. G_D receives the outward edge normal alongside the
/// point since the two short sides of a strip carry opposite normals.
struct BoundaryData {
  std::function<Eigen::Vector3d(const Eigen::Vector2d&)> y_D;
  std::function<Eigen::Vector3d(const Eigen::Vector2d&, const Eigen::Vector2d&)>
      G_D;
};

BoundaryData zero_boundary_data();
/// y_D = (x1, x2, 0), G_D = (n1, n2, 0): traces of the flat identity plate.
BoundaryData flat_boundary_data();
/// y_D = (x1 - sign(x1) * amount, x2, 0), G_D = (n1, n2, 0).
BoundaryData compressed_strip_data(double amount);

/// Assembled saddle-point operator for one Newton step in the monolithic
/// (y | mu | gamma) layout.
struct SparseSystem {
  SpMat matrix;
  Eigen::VectorXd rhs;
  DofMap dofs;
};

// ---------------------------------------------------------------------------
// Interior-penalty plate form and companions. The skeleton is the set of
// interior plus Dirichlet edges; free boundary edges contribute nothing.
// Penalty weights use the local edge length h_e. The consistency term
// contracts the averaged Hessian twice with the edge normal:
//   [grad y] . ({hess w} n) n.
// All quadrature (degree 4 on cells, degree 5 on edges) is exact for P2
// arguments.
// ---------------------------------------------------------------------------

/// Symmetric (y,y) block: cell Hessian products, consistency terms, and jump
/// penalties over the skeleton.
SpMat assemble_a_h(const TriMesh& mesh, const DofMap& dofs,
                   const PenaltyParams& params);

/// Boundary load realizing the weakly imposed Dirichlet data.
Eigen::VectorXd assemble_F_h(const TriMesh& mesh, const DofMap& dofs,
                             const PenaltyParams& params,
                             const BoundaryData& data);

/// The boundary-data terms of a_h applied to a discrete field: rows w, the
/// field taking the place of the data in F_h. Matches assemble_F_h exactly
/// when the data are the traces of the field.
Eigen::VectorXd apply_a_h_boundary_data_terms(const TriMesh& mesh,
                                              const DofMap& dofs,
                                              const PenaltyParams& params,
                                              const FEFunction& y);

/// Volume load (f, w) for a constant force density.
Eigen::VectorXd assemble_load(const TriMesh& mesh, const DofMap& dofs,
                              const Eigen::Vector3d& f);

/// Coupling block (mu, grad w): rows are y dofs, columns mu dofs.
SpMat assemble_coupling(const TriMesh& mesh, const DofMap& dofs);

/// Barycentric trilinear-form blocks for a fixed Stiefel field G:
///   y_gamma(i, s)  = |T| Z_s : (G^T M_i + M_i^T G),  M_i = grad of y-basis i
///   mu_gamma(j, s) = |T| Z_s : (G^T E_j + E_j^T G),  E_j = mu-basis j
/// with Z_s the symmetric basis {e11, e22, e12 + e21}.
struct LhBlocks {
  SpMat y_gamma;   // v_dofs x upsilon_dofs
  SpMat mu_gamma;  // m_dofs x upsilon_dofs
};
LhBlocks assemble_l_h_blocks(const TriMesh& mesh, const DofMap& dofs,
                             const std::vector<StiefelPoint>& G);

/// Scalar value of the trilinear form l_h(G; m, z) for P0 arguments.
double l_h_value(const TriMesh& mesh, const DofMap& dofs,
                 const std::vector<StiefelPoint>& G, const FEFunction& m,
                 const FEFunction& z);

/// Residual of the exponential block tested against the P0 basis:
///   r_T = |T| (exp_map(G_T, mu_T, tau) - grad y(x_T)).
Eigen::VectorXd exp_block_residual(const TriMesh& mesh, const DofMap& dofs,
                                   const std::vector<StiefelPoint>& G,
                                   const FEFunction& mu, const FEFunction& y,
                                   double tau);

/// Derivative of the exponential term with respect to mu: block-diagonal
/// with one dense 6x6 block per cell built from dexp_map.
SpMat exp_block_jacobian(const TriMesh& mesh, const DofMap& dofs,
                         const std::vector<StiefelPoint>& G,
                         const FEFunction& mu, double tau);

/// 1/2 a_h(y, y) - (f, y) - F_h(y).
double energy(const TriMesh& mesh, const DofMap& dofs, const FEFunction& y,
              const Eigen::Vector3d& f, const PenaltyParams& params,
              const BoundaryData& data);

/// max over cells of |grad y^T grad y - I|_F at the barycenter.
double isometry_defect(const TriMesh& mesh, const DofMap& dofs,
                       const FEFunction& y);

/// Broken H^2 norm: cell Hessians plus h^-1 gradient-jump and h^-3
/// value-jump terms over the skeleton.
double h2h_norm(const TriMesh& mesh, const DofMap& dofs, const FEFunction& y);

/// L^2 norm of a cellwise-constant matrix field.
double mu_l2_norm(const TriMesh& mesh, const DofMap& dofs,
                  const FEFunction& mu);

}  // namespace isoplate
