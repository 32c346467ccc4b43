#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "isoplate/forms.hpp"

namespace isoplate {

/// Solver triple plus the exactly feasible gradient snapshot G.
struct DGState {
  FEFunction y;       // Space::V
  FEFunction mu;      // Space::M
  FEFunction gamma;   // Space::Upsilon
  std::vector<StiefelPoint> G;
  int outer_index = 0;
};

struct SolverConfig {
  double tau = 2.0;
  double tol = 1e-4;        // outer stop: |dE|/tau < tol
  double mu_tol = 0.0;      // optional stop on ||mu||_L2; 0 disables
  double newton_tol = 1e-10;  // absolute residual 2-norm
  int newton_max = 50;
  int outer_max = 1000;
  bool tau_backoff = false;   // halve tau and retry once on energy increase
  bool warm_start_gamma = false;
};

struct IterationRecord {
  int k = 0;
  double energy = 0.0;           // E_h(y^k)
  double denergy_over_tau = 0.0; // (E_h(y^{k-1}) - E_h(y^k)) / tau
  double defect = 0.0;           // D_h(y^k)
  double mu_norm = 0.0;          // ||mu^k||_L2
  int newton_steps = 0;
  double tau_used = 0.0;
  bool energy_increased = false;
};
using IterationLog = std::vector<IterationRecord>;

class NewtonDivergedError : public std::runtime_error {
 public:
  explicit NewtonDivergedError(const std::string& what)
      : std::runtime_error(what) {}
};
class SingularJacobianError : public std::runtime_error {
 public:
  explicit SingularJacobianError(const std::string& what)
      : std::runtime_error(what) {}
};
class OuterMaxExceededError : public std::runtime_error {
 public:
  explicit OuterMaxExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

/// G'(x_T) = exp_map(G(x_T), tangent_project(G(x_T), mu(x_T)), tau), with the
/// result re-validated as a Stiefel point on every cell.
std::vector<StiefelPoint> g_update(const DofMap& dofs,
                                   const std::vector<StiefelPoint>& G,
                                   const FEFunction& mu, double tau);

/// Barycentric gradients of y as a validated Stiefel field; throws when any
/// cell violates feasibility.
std::vector<StiefelPoint> stiefel_field_from_gradient(const TriMesh& mesh,
                                                      const DofMap& dofs,
                                                      const FEFunction& y);

/// Flat plate y = (x1, x2, 0) with its exact gradient field.
DGState make_flat_state(const TriMesh& mesh, const DofMap& dofs);

double max_stiefel_defect(const std::vector<StiefelPoint>& G);

/// Owns one plate problem (mesh, penalties, force, Dirichlet data) and the
/// cached assembly pieces. Single writer: not meant to be shared across
/// threads; distinct instances run independently.
class PlateSolver {
 public:
  PlateSolver(TriMesh mesh, PenaltyParams params, Eigen::Vector3d force,
              BoundaryData data);

  const TriMesh& mesh() const { return mesh_; }
  const DofMap& dofs() const { return dofs_; }
  const PenaltyParams& penalties() const { return params_; }

  /// Swaps the Dirichlet data (quasi-static continuation); reassembles only
  /// the boundary load.
  void set_boundary_data(BoundaryData data);

  /// E_h through the cached operator.
  double energy_of(const FEFunction& y) const;

  /// Solves the saddle-point step for (y, mu, gamma) at fixed state.G by
  /// Newton; returns the new trial state (G unchanged) and the step count.
  std::pair<DGState, int> newton_step_problem(const DGState& state,
                                              const SolverConfig& config);

  /// Full outer iteration: Newton solve + exact G-update until the energy
  /// increment (or optionally ||mu||) drops below tolerance. Warns on energy
  /// increase; throws OuterMaxExceededError when the budget runs out.
  std::pair<DGState, IterationLog> proximal_loop(const DGState& initial,
                                                 const SolverConfig& config);

 private:
  Eigen::VectorXd residual(const Eigen::VectorXd& u, const LhBlocks& lh,
                           const std::vector<StiefelPoint>& G,
                           double tau) const;
  void build_jacobian(const Eigen::VectorXd& u, const LhBlocks& lh,
                      const std::vector<StiefelPoint>& G, double tau);

  TriMesh mesh_;
  DofMap dofs_;
  PenaltyParams params_;
  Eigen::Vector3d force_;
  BoundaryData data_;

  SpMat a_;          // (y, y)
  SpMat coupling_;   // (y rows, mu cols)
  SpMat coupling_t_;
  Eigen::VectorXd load_;
  Eigen::VectorXd f_h_;
  Eigen::VectorXd rhs_;  // load_ + f_h_

  SpMat jac_;
  Eigen::SparseLU<SpMat> lu_;
  bool pattern_ready_ = false;
};

struct LoadStep {
  double t = 0.0;
  DGState state;
  IterationLog log;
};

/// Ramps the strip compression linearly over t in (0, 1] with steps delta_t,
/// re-solving to the proximal-loop tolerance at each step with warm starts.
/// Returns the snapshots nearest the requested times (always including the
/// final state). A failing load step reports its t and halts.
std::vector<LoadStep> continuation_drive(
    PlateSolver& solver, DGState state, const SolverConfig& config,
    double delta_t, double compression,
    const std::vector<double>& snapshot_times,
    const std::function<void(const LoadStep&)>& on_step = {});

}  // namespace isoplate
