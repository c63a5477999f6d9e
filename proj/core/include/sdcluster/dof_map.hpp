#pragma once

#include "sdcluster/cluster.hpp"
#include "sdcluster/geometry.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace sdcluster {

/// Constrained degree-of-freedom numbering for the discrete spaces.
///
/// X side (V^h / V^h_partial): vertices identified across junction
/// correspondences form classes; each class carries a local frame whose
/// columns span the admissible displacement directions (all of R^d away from
/// the external planes, the in-plane tangents on one plane, the edge
/// direction on two planes). Reconstructed displacements satisfy the
/// junction identification and n_k . (X - id) = 0 exactly.
///
/// kappa side (W^h): one scalar copy per (patch, vertex); junction vertices
/// carry one linear constraint sum_j o_j^k kappa_{s_j} = 0 per incident
/// junction. Constraints are eliminated per class (highest-numbered copies
/// first), so reconstruction is exact by construction.
struct DofMap {
  int dim = 3;

  std::vector<index_t> patch_offset;  // flat node id = patch_offset[i] + k
  index_t num_nodes = 0;

  std::vector<index_t> node_class;  // flat node -> class id
  index_t num_classes = 0;
  std::vector<index_t> class_representative;  // class -> smallest flat node

  struct ClassFrame {
    index_t x_offset = -1;     // first x-dof, -1 if fully constrained
    int num_free = 0;          // number of frame columns
    std::array<Vec3, 3> columns;
  };
  std::vector<ClassFrame> frames;  // per class
  index_t n_x = 0;

  struct LinComb {
    // empty for eliminated nodes that reduce to zero
    std::vector<std::pair<index_t, double>> terms;  // (kappa dof, coeff)
  };
  std::vector<LinComb> kappa_expansion;    // per flat node
  std::vector<index_t> kappa_dof_of_node;  // -1 for eliminated nodes
  index_t n_kappa = 0;

  index_t flat_node(index_t patch, index_t vertex) const {
    return patch_offset[patch] + vertex;
  }

  /// delta = R_x x: nodal displacement field from reduced unknowns.
  Positions expand_x(const Cluster& c, const Eigen::VectorXd& x) const;
  /// Nodal kappa values (per patch, per vertex) from reduced unknowns.
  std::vector<std::vector<double>> expand_kappa(const Cluster& c,
                                                const Eigen::VectorXd& k) const;
};

/// Builds the DOF maps for a validated cluster. Deterministic numbering.
/// Throws std::runtime_error for unsupported configurations (junction vertex
/// constrained to two non-parallel planes).
DofMap build_dof_maps(const Cluster& c);

}  // namespace sdcluster
