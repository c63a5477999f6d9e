#pragma once

#include "sdcluster/anisotropy.hpp"
#include "sdcluster/cluster.hpp"
#include "sdcluster/dof_map.hpp"
#include "sdcluster/geometry.hpp"

#include <Eigen/Sparse>

#include <array>

namespace sdcluster {

using ElementBlocks = std::array<std::array<Mat3, 3>, 3>;

/// sigma |sigma_j^m| (grad phi_a . grad phi_b) Id blocks.
ElementBlocks isotropic_element_stiffness(const ElementGeometry& g, double sigma);

/// Anisotropic vector stiffness blocks of one element:
///   block(a,b) = sum_l w_l gamma_l(nu^m) |sigma^m|
///                sum_j (grad phi_a . t_j^l)(grad phi_b . t_j^l) Gt_l
/// with w_l = [gamma_l(nu^{m+1,p}) / gamma(nu^{m+1,p})]^(r-1) from the lagged
/// unit normal and {t_j^l} the Gt_l-orthonormal tangent frame on Gamma^m.
ElementBlocks anisotropic_element_stiffness(const ElementGeometry& g,
                                            const Vec3& lagged_unit_normal,
                                            const Anisotropy& a);

/// The reduced linear system of one Picard iterate, in unknowns (kappa, x):
///
///   [ -dt S_kappa   B       ] [kappa]   [ 0 ]
///   [  B^T          S_X     ] [  x  ] = [ f ]
///
/// where B carries the lumped nu^{m+1/2,p} coupling, S_kappa the scalar
/// Laplace-Beltrami stiffness on Gamma^m, S_X the (an)isotropic vector
/// stiffness, and f collects the -S_X id terms plus the rho_k boundary
/// integrals of xi^{m+1/2,p}. Symmetric by construction.
struct AssembledSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  index_t n_kappa = 0;
  index_t n_x = 0;
  double dt = 0.0;
};

/// Assembles one Picard iterate. `c` holds Gamma^m (topology and positions),
/// `lagged` the positions of Gamma^{m+1,p}. All integrals are over Gamma^m.
/// Throws std::runtime_error on degenerate elements.
AssembledSystem assemble(const Cluster& c, const Positions& lagged, double dt,
                         const DofMap& dofs);

}  // namespace sdcluster
