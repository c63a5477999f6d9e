#include "sdcluster/solver.hpp"

#include "sdcluster/geometry.hpp"

#include <unsupported/Eigen/IterativeSolvers>

#include <cmath>
#include <limits>
#include <set>

namespace sdcluster {

Stepper::Stepper(const Cluster& c, SolverConfig cfg) : cfg_(cfg), dofs_(build_dof_maps(c)) {
  if (!(cfg_.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (cfg_.picard_max < 1) throw std::invalid_argument("picard_max must be >= 1");
}

Eigen::VectorXd Stepper::solve_linear(const AssembledSystem& sys, bool fresh_factorization) {
  if (cfg_.linear_solver == SolverConfig::LinearSolver::Minres) {
    Eigen::MINRES<Eigen::SparseMatrix<double>> minres;
    minres.setTolerance(1e-13);
    minres.setMaxIterations(40 * sys.matrix.rows());
    minres.compute(sys.matrix);
    Eigen::VectorXd u = minres.solve(sys.rhs);
    if (minres.info() != Eigen::Success)
      throw StepError("iterative linear solve did not converge");
    return u;
  }
  if (!pattern_analyzed_) {
    lu_.analyzePattern(sys.matrix);
    pattern_analyzed_ = true;
    have_factorization_ = false;
  }
  // Between Picard iterates only the weighted-normal coupling changes, so
  // the previous factorization stays an excellent preconditioner: solve by
  // iterative refinement and refactorize only when that stalls.
  const double tol = 1e-12 * std::max(1.0, sys.rhs.cwiseAbs().maxCoeff());
  auto refine = [&](Eigen::VectorXd& u) {
    double res = std::numeric_limits<double>::max();
    for (int sweep = 0; sweep < 25; ++sweep) {
      const Eigen::VectorXd r = sys.rhs - sys.matrix * u;
      res = r.cwiseAbs().maxCoeff();
      if (res <= tol) return res;
      u += lu_.solve(r);
    }
    return res;
  };
  if (fresh_factorization || !have_factorization_) {
    lu_.factorize(sys.matrix);
    if (lu_.info() != Eigen::Success) throw StepError("singular linear system");
    have_factorization_ = true;
  }
  Eigen::VectorXd u = lu_.solve(sys.rhs);
  if (lu_.info() != Eigen::Success) throw StepError("linear solve failed");
  if (refine(u) > tol) {
    lu_.factorize(sys.matrix);
    if (lu_.info() != Eigen::Success) throw StepError("singular linear system");
    u = lu_.solve(sys.rhs);
    if (refine(u) > tol) throw StepError("linear solve failed to reach tolerance");
  }
  return u;
}

StepReport Stepper::step(Cluster& c) {
  const Positions oldp = positions_of(c);
  Positions lagged = oldp;  // X^{m+1,0} = id
  StepReport report;
  Eigen::VectorXd u;
  bool converged = false;
  const bool bgn = cfg_.mode == SolverConfig::Mode::BGN;
  const int max_iters = bgn ? 1 : cfg_.picard_max;
  for (int p = 0; p < max_iters; ++p) {
    const AssembledSystem sys = assemble(c, lagged, cfg_.dt, dofs_);
    u = solve_linear(sys, p == 0);
    report.linear_residual = (sys.matrix * u - sys.rhs).cwiseAbs().maxCoeff();
    const Positions delta = dofs_.expand_x(c, u.tail(dofs_.n_x));
    double change = 0.0;
    for (size_t i = 0; i < oldp.size(); ++i)
      for (size_t k = 0; k < oldp[i].size(); ++k) {
        const Vec3 next = oldp[i][k] + delta[i][k];
        change = std::max(change, (next - lagged[i][k]).cwiseAbs().maxCoeff());
        lagged[i][k] = next;
      }
    report.picard_iters = p + 1;
    if (change < cfg_.picard_tol) {
      converged = true;
      break;
    }
  }
  if (!bgn && !converged && cfg_.picard_max > 1)
    throw StepError("Picard iteration did not converge; consider a smaller dt");

  double max_disp = 0.0;
  for (size_t i = 0; i < oldp.size(); ++i)
    for (size_t k = 0; k < oldp[i].size(); ++k)
      max_disp = std::max(max_disp, (lagged[i][k] - oldp[i][k]).cwiseAbs().maxCoeff());
  report.max_displacement = max_disp;
  kappa_ = dofs_.expand_kappa(c, u.head(dofs_.n_kappa));
  set_positions(c, lagged);
  return report;
}

std::vector<StepDiagnostics> run(Cluster& c, const RunConfig& cfg, const RunSinks& sinks) {
  const double dt = cfg.solver.dt;
  const double steps_real = cfg.t_final / dt;
  const long steps = std::lround(steps_real);
  if (std::abs(steps_real - steps) > 1e-9 * std::max(1.0, steps_real))
    throw std::invalid_argument("T_final must be an integer multiple of dt");

  // Frame times snapped to the step grid.
  std::set<long> frame_steps;
  for (double t : cfg.frame_times) {
    long m = std::lround(t / dt);
    m = std::max(0L, std::min(steps, m));
    frame_steps.insert(m);
  }

  Stepper stepper(c, cfg.solver);
  std::vector<StepDiagnostics> trajectory;
  std::vector<double> vol0 = region_volumes(c);
  double contact_energy = 0.0;

  auto record = [&](long m, int iters) {
    StepDiagnostics d;
    d.t = m * dt;
    d.energy_surface = surface_energy(c);
    d.energy_contact = contact_energy;
    d.energy_total = d.energy_surface + d.energy_contact;
    d.volumes = region_volumes(c);
    d.v_delta = vol0.empty() ? 0.0 : relative_volume_error(d.volumes, vol0);
    d.mesh_ratio = mesh_ratio(c);
    d.picard_iters = iters;
    trajectory.push_back(d);
    if (sinks.on_diagnostics) sinks.on_diagnostics(d);
    if (frame_steps.count(m) && sinks.on_frame) sinks.on_frame(d.t, c);
  };

  record(0, 0);
  for (long m = 1; m <= steps; ++m) {
    const Positions oldp = positions_of(c);
    const StepReport rep = stepper.step(c);
    const Positions newp = positions_of(c);
    for (index_t k = 0; k < static_cast<index_t>(c.boundaries.size()); ++k) {
      if (c.boundaries[k].contact_param == 0.0) continue;
      contact_energy -= c.boundaries[k].contact_param *
                        weighted_xi_area_form(c, oldp, newp, k);
    }
    record(m, rep.picard_iters);
  }
  return trajectory;
}

}  // namespace sdcluster
