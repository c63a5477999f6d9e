#pragma once

#include "sdcluster/assembly.hpp"
#include "sdcluster/cluster.hpp"
#include "sdcluster/diagnostics.hpp"
#include "sdcluster/dof_map.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

namespace sdcluster {

struct SolverConfig {
  double dt = 1e-2;
  double picard_tol = 1e-10;  // max vertex displacement between iterates
  int picard_max = 100;
  enum class Mode { SP, BGN } mode = Mode::SP;  // BGN = exactly one iteration
  enum class LinearSolver { Direct, Minres } linear_solver = LinearSolver::Direct;
};

struct StepReport {
  int picard_iters = 0;
  double linear_residual = 0.0;
  double max_displacement = 0.0;  // accepted step, max over vertices
};

class StepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One time step of the structure-preserving scheme: lagged Picard iteration
/// around the assembled linear system, starting from X^{m+1,0} = id. Holds
/// the DOF maps and the reused symbolic factorization, so the cluster
/// topology must not change between steps.
class Stepper {
 public:
  Stepper(const Cluster& c, SolverConfig cfg);

  /// Advances the cluster in place; returns iteration diagnostics. The
  /// resulting nodal kappa field is kept for inspection.
  StepReport step(Cluster& c);

  const DofMap& dofs() const { return dofs_; }
  const std::vector<std::vector<double>>& last_kappa() const { return kappa_; }
  const SolverConfig& config() const { return cfg_; }

 private:
  Eigen::VectorXd solve_linear(const AssembledSystem& sys, bool fresh_factorization);

  SolverConfig cfg_;
  DofMap dofs_;
  std::vector<std::vector<double>> kappa_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  bool pattern_analyzed_ = false;
  bool have_factorization_ = false;
};

struct RunConfig {
  SolverConfig solver;
  double t_final = 1.0;
  std::vector<double> frame_times;  // absolute times; matched to step grid
};

struct RunSinks {
  std::function<void(const StepDiagnostics&)> on_diagnostics;
  std::function<void(double, const Cluster&)> on_frame;
};

/// Runs M = T_final / dt uniform steps, emitting diagnostics every step
/// (including t = 0) and frames at the configured times. The contact energy
/// is accumulated exactly from the weighted-xi increments. Deterministic.
std::vector<StepDiagnostics> run(Cluster& c, const RunConfig& cfg, const RunSinks& sinks = {});

}  // namespace sdcluster
