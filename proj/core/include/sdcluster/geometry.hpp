#pragma once

#include "sdcluster/cluster.hpp"
#include "sdcluster/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace sdcluster {

/// Per-patch vertex positions, used to evaluate geometry on a state other
/// than the one stored in the cluster (old/new/lagged iterates share the
/// cluster topology).
using Positions = std::vector<std::vector<Vec3>>;

Positions positions_of(const Cluster& c);
void set_positions(Cluster& c, const Positions& p);

/// Geometry of one (d-1)-simplex: orientation vector A, measure |A|/(d-1)!,
/// unit normal and the tangential gradients of the P1 nodal basis.
struct ElementGeometry {
  int dim = 3;
  std::array<Vec3, 3> coords;
  Vec3 orientation = Vec3::Zero();
  double measure = 0.0;
  Vec3 normal = Vec3::Zero();
  std::array<Vec3, 3> basis_gradients;
  bool degenerate = true;
};

/// d = 2: A = rot_{-90}(q1 - q0); d = 3: A = (q1 - q0) x (q2 - q0).
Vec3 orientation_vector(const Vec3* q, int dim);

ElementGeometry element_geometry(const Vec3* q, int dim);
ElementGeometry element_geometry(const SurfacePatch& patch, const std::vector<Vec3>& pos,
                                 index_t j);

/// Time-weighted normal nu^{m+1/2} of one element: the exact time average of
/// the interpolated orientation vector, divided by |A^m|. Trapezoidal closed
/// form for d = 2, Simpson for d = 3 (A(t) has degree d-1 in t).
/// Throws std::runtime_error("degenerate simplex") if |A^m| = 0.
Vec3 weighted_normal(const ElementGeometry& old_elem, const Vec3* new_coords);

/// Per-element weighted normals for all patches.
std::vector<std::vector<Vec3>> weighted_normal_field(const Cluster& topo, const Positions& oldp,
                                                     const Positions& newp);

/// Weighted boundary vector xi^{m+1/2} of one chain segment (d = 3):
///   n x (f{L^m} + f{L^{m+1}}) / (2 |f{L^m}|).
Vec3 weighted_xi_3d(const Vec3& a_old, const Vec3& b_old, const Vec3& a_new, const Vec3& b_new,
                    const Vec3& plane_normal);

/// d = 2 xi: the in-plane 90-degree rotation of n oriented so that (n, xi)
/// matches the orientation of (nu, mu) at the boundary point.
Vec3 xi_2d(const Vec3& plane_normal, const Vec3& nu, const Vec3& mu);

Vec3 orientation_vector_of(const SurfacePatch& patch, const std::vector<Vec3>& pos, index_t j);

/// Vertex-quadrature inner product <.,.>^h over the cluster: f(i, j, a) must
/// return the element-side value of (u . v) at local vertex a of simplex j of
/// patch i. Deterministic summation order.
template <class F>
double lumped_quadrature(const Cluster& c, const Positions& pos, F&& f) {
  const int d = c.dim;
  double total = 0.0;
  for (index_t i = 0; i < c.num_patches(); ++i) {
    const SurfacePatch& patch = c.patches[i];
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      const Vec3 a = orientation_vector_of(patch, pos[i], j);
      const double w = a.norm() / (d == 3 ? 2.0 : 1.0) / d;
      for (int k = 0; k < d; ++k) total += w * f(i, j, k);
    }
  }
  return total;
}

/// Volume of region l in the given state: surface coning to the reference
/// point plus, for plane-bounded regions, the in-plane cone over each
/// boundary chain weighted by the plane/reference offset. Exact for regions
/// closed by surfaces; defined up to a time-independent constant otherwise.
double region_volume(const Cluster& c, const Positions& pos, index_t region_idx);
double region_volume(const Cluster& c, index_t region_idx);

/// Exact geometric volume change of region l between two states, computed by
/// signed-simplex decomposition of the swept prisms (three tetrahedra per
/// triangle in 3d, two triangles per segment in 2d). Independent of the
/// time-weighted normals.
double swept_region_volume_change(const Cluster& topo, const Positions& oldp,
                                  const Positions& newp, index_t region_idx);

/// Exact signed area (2d: length) swept by boundary chain k within its
/// plane, as (delta |G_k^+|, delta |G_k^-|). Throws if the chains leave the
/// plane by more than 1e-9 of the bbox diameter.
std::pair<double, double> swept_contact_area_change(const Cluster& topo, const Positions& oldp,
                                                    const Positions& newp, index_t boundary_idx);

/// <(X - id) . nu^{m+1/2}, chi>^h with chi the region orientation pattern:
/// the discrete volume-change form that the scheme drives to zero.
double weighted_normal_volume_form(const Cluster& topo, const Positions& oldp,
                                   const Positions& newp, index_t region_idx);

/// int_{B_k^m} xi^{m+1/2} . (X - id) dH^{d-2}; equals delta |G_k^-| exactly.
double weighted_xi_area_form(const Cluster& topo, const Positions& oldp, const Positions& newp,
                             index_t boundary_idx);

struct JunctionVertexAngles {
  index_t junction = -1;
  index_t entry = -1;
  // pairwise angles (s1,s2), (s1,s3), (s2,s3) in degrees
  std::array<double, 3> angles_deg = {0.0, 0.0, 0.0};
};

struct ContactVertexAngle {
  index_t boundary = -1;
  index_t chain_pos = -1;
  double angle_deg = 0.0;
};

struct AngleReport {
  std::vector<JunctionVertexAngles> junction_angles;
  std::vector<ContactVertexAngle> contact_angles;
  std::vector<std::string> warnings;
};

/// Diagnostic triple-junction dihedral angles and boundary contact angles,
/// from adjacent-element conormal averages.
AngleReport measure_angles(const Cluster& c);

/// Degeneracy threshold: measure below 1e-14 * (bbox diameter)^(d-1) aborts
/// a step.
double degenerate_measure_threshold(const Cluster& c);

}  // namespace sdcluster
