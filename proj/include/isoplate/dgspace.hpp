#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "isoplate/mesh.hpp"
#include "isoplate/stiefel.hpp"

namespace isoplate {

enum class Space { V, M, Upsilon };

/// Cell-contiguous dof layout for the three discrete spaces:
///   V: vector-valued discontinuous P2, 18 dofs per cell
///      (6 Lagrange nodes x 3 components, index 3*node + comp),
///   M: cellwise-constant 3x2 matrices, 6 dofs per cell (2*row + col),
///   Upsilon: cellwise-constant symmetric 2x2, 3 dofs per cell
///      (stored (s11, s22, s12), the off-diagonal counted once).
/// The monolithic saddle-point layout stacks the blocks as (y | mu | gamma).
struct DofMap {
  explicit DofMap(int ncells_) : ncells(ncells_) {}

  int ncells = 0;

  int v_dofs() const { return 18 * ncells; }
  int m_dofs() const { return 6 * ncells; }
  int upsilon_dofs() const { return 3 * ncells; }
  int total_dofs() const { return 27 * ncells; }

  // Indices local to each space's own coefficient vector.
  int y_index(int cell, int node, int comp) const {
    return 18 * cell + 3 * node + comp;
  }
  int mu_index(int cell, int row, int col) const {
    return 6 * cell + 2 * row + col;
  }
  int gamma_index(int cell, int s) const { return 3 * cell + s; }

  // Block offsets in the monolithic layout.
  int y_offset() const { return 0; }
  int mu_offset() const { return 18 * ncells; }
  int gamma_offset() const { return 24 * ncells; }

  int dofs_of(Space s) const {
    switch (s) {
      case Space::V: return v_dofs();
      case Space::M: return m_dofs();
      default: return upsilon_dofs();
    }
  }
};

struct FEFunction {
  Space space = Space::V;
  Eigen::VectorXd coeffs;
};

FEFunction zero_function(const DofMap& dofs, Space space);

// ---------------------------------------------------------------------------
// Reference P2 Lagrange basis. Node order: the 3 vertices, then the midpoints
// of edges (v0,v1), (v1,v2), (v2,v0).
// ---------------------------------------------------------------------------
void p2_shape_values(double xi, double eta, std::array<double, 6>& out);
void p2_shape_grads(double xi, double eta,
                    std::array<Eigen::Vector2d, 6>& out);
/// Reference Hessians are constant for quadratics.
const std::array<Eigen::Matrix2d, 6>& p2_shape_hessians();

/// Affine map between the reference triangle and a physical cell.
struct CellFrame {
  Eigen::Matrix2d jac;      // columns: v1 - v0, v2 - v0
  Eigen::Matrix2d jac_inv;
  Eigen::Vector2d origin;   // v0
  double area;

  CellFrame(const TriMesh& mesh, int cell);

  Eigen::Vector2d to_reference(const Eigen::Vector2d& x) const {
    return jac_inv * (x - origin);
  }
  Eigen::Vector2d to_physical(const Eigen::Vector2d& ref) const {
    return origin + jac * ref;
  }
};

/// Physical coordinates of the 6 P2 nodes of a cell.
std::array<Eigen::Vector2d, 6> p2_nodes(const TriMesh& mesh, int cell);

// ---------------------------------------------------------------------------
// Evaluation at physical points.
// ---------------------------------------------------------------------------
Eigen::Vector3d eval(const TriMesh& mesh, const DofMap& dofs,
                     const FEFunction& y, int cell, const Eigen::Vector2d& x);
Matrix3x2 eval_grad(const TriMesh& mesh, const DofMap& dofs,
                    const FEFunction& y, int cell, const Eigen::Vector2d& x);
/// One 2x2 Hessian per component; constant over each cell for P2.
std::array<Eigen::Matrix2d, 3> eval_hessian(const TriMesh& mesh,
                                            const DofMap& dofs,
                                            const FEFunction& y, int cell);

Matrix3x2 eval_m(const DofMap& dofs, const FEFunction& mu, int cell);
Eigen::Matrix2d eval_upsilon(const DofMap& dofs, const FEFunction& g,
                             int cell);

// ---------------------------------------------------------------------------
// Skeleton traces. The minus side is edge.cells[0] (the normal points away
// from it); boundary edges only carry the minus side.
// ---------------------------------------------------------------------------
struct TraceSample {
  Eigen::Vector3d value[2];
  Matrix3x2 grad[2];
  bool two_sided = false;
};

TraceSample sample_traces(const TriMesh& mesh, const DofMap& dofs,
                          const FEFunction& y, int edge,
                          const Eigen::Vector2d& x);

/// [y] = y^- - y^+ on interior edges, the single trace on boundary edges.
Eigen::Vector3d jump(const TriMesh& mesh, const DofMap& dofs,
                     const FEFunction& y, int edge, const Eigen::Vector2d& x);
/// [grad y] = (grad y^- - grad y^+) n_e, or (grad y) n on the boundary.
Eigen::Vector3d jump_grad(const TriMesh& mesh, const DofMap& dofs,
                          const FEFunction& y, int edge,
                          const Eigen::Vector2d& x);
/// ({hess y} n_e) n_e with the single-sided trace on boundary edges.
Eigen::Vector3d average_hessian_nn(const TriMesh& mesh, const DofMap& dofs,
                                   const FEFunction& y, int edge,
                                   const Eigen::Vector2d& x);

// ---------------------------------------------------------------------------
// Interpolation: nodal for V, barycenter evaluation for M / Upsilon.
// ---------------------------------------------------------------------------
FEFunction interpolate_v(
    const TriMesh& mesh, const DofMap& dofs,
    const std::function<Eigen::Vector3d(const Eigen::Vector2d&)>& f);
FEFunction interpolate_m(
    const TriMesh& mesh, const DofMap& dofs,
    const std::function<Matrix3x2(const Eigen::Vector2d&)>& f);
FEFunction interpolate_upsilon(
    const TriMesh& mesh, const DofMap& dofs,
    const std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>& f);

}  // namespace isoplate
