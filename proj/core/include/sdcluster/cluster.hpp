#pragma once

#include "sdcluster/anisotropy.hpp"
#include "sdcluster/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sdcluster {

/// One oriented simplicial hypersurface: a polyline in 2d, a triangle mesh
/// in 3d. Simplices are consistently ordered; the orientation vector of each
/// simplex (see geometry.hpp) defines its normal.
struct SurfacePatch {
  index_t surface_id = 0;
  int dim = 3;
  std::vector<Vec3> vertices;                 // padded with z = 0 for dim = 2
  std::vector<std::array<index_t, 3>> simplices;  // last entry -1 for dim = 2
  double sigma = 1.0;                         // surface energy density, isotropic mode

  index_t num_vertices() const { return static_cast<index_t>(vertices.size()); }
  index_t num_simplices() const { return static_cast<index_t>(simplices.size()); }
};

/// Three (surface, boundary part) pairs meeting along a junction, with the
/// per-surface orientation signs o^k and the vertex correspondence lists:
/// entry l of each list names the same spatial junction point.
struct TripleJunction {
  index_t tj_id = 0;
  std::array<std::pair<index_t, index_t>, 3> incident;  // (surface_id, boundary_part)
  std::array<int, 3> orientation = {1, 1, 1};
  std::array<std::vector<index_t>, 3> correspondence;

  index_t arity() const { return static_cast<index_t>(correspondence[0].size()); }
};

/// A boundary part of one surface constrained to a fixed external plane.
/// The chain lists the attached vertices in order; in 3d the ordering runs
/// along mu x nu, in 2d the chain is a single vertex. For closed chains the
/// first vertex index is repeated at the end.
struct BoundaryLine {
  index_t bl_id = 0;
  std::pair<index_t, index_t> incident;  // (surface_id, boundary_part)
  Vec3 plane_point = Vec3::Zero();
  Vec3 plane_normal = Vec3::Zero();  // unit, pointing toward the cluster
  double contact_param = 0.0;        // rho_k, contact energy density difference
  std::vector<index_t> chain;

  bool closed() const { return chain.size() >= 2 && chain.front() == chain.back(); }
  /// Number of segments (3d); 0 for a single-vertex 2d chain.
  index_t num_segments() const {
    return chain.size() < 2 ? 0 : static_cast<index_t>(chain.size()) - 1;
  }
};

/// An enclosed volume region: the surfaces bounding it (with outer-normal
/// signs), the external planes participating in its closure, and a reference
/// point for the volume coning construction.
struct Region {
  index_t region_id = 0;
  std::vector<index_t> surface_set;  // indices into Cluster::patches
  std::vector<int> orientation;      // size I_S; o_i nu_i outer on surface i
  std::vector<index_t> plane_set;    // indices into Cluster::boundaries
  Vec3 reference_point = Vec3::Zero();
};

struct EnergyModel {
  enum class Kind { Isotropic, Anisotropic };
  Kind kind = Kind::Isotropic;
  Anisotropy anisotropy;  // used only for Kind::Anisotropic
};

struct Cluster {
  int dim = 3;
  std::vector<SurfacePatch> patches;
  std::vector<TripleJunction> junctions;
  std::vector<BoundaryLine> boundaries;
  std::vector<Region> regions;
  EnergyModel energy;

  index_t num_patches() const { return static_cast<index_t>(patches.size()); }
  index_t total_vertices() const {
    index_t n = 0;
    for (const auto& p : patches) n += p.num_vertices();
    return n;
  }
  index_t total_simplices() const {
    index_t n = 0;
    for (const auto& p : patches) n += p.num_simplices();
    return n;
  }
  double bbox_diameter() const;
};

struct Violation {
  std::string code;     // stable machine-readable identifier
  std::string message;  // human-readable description
  index_t k = -1;       // junction/boundary/region index when applicable
  index_t l = -1;       // entry index when applicable
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks all cluster invariants: mesh sanity (index ranges, nonzero
/// orientation vectors, manifold-with-boundary, consistent ordering),
/// junction correspondences (arity, 1e-12 coincidence, bijectivity,
/// rotational orientation convention), boundary chains (on-plane to 1e-12,
/// unit normals, chain ordering, disjointness from junctions) and region
/// orientations (outer-normal parity check). Pure; report-style.
ValidationReport validate_cluster(const Cluster& c);

/// Mesh ratio r^m: max over surfaces of (max element measure / min element
/// measure). Throws std::runtime_error("degenerate simplex") on zero measure.
double mesh_ratio(const Cluster& c);

}  // namespace sdcluster
