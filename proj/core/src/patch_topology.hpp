#pragma once

#include "sdcluster/cluster.hpp"

#include <map>
#include <utility>
#include <vector>

namespace sdcluster::detail {

// Edge/vertex incidence of one patch, used for manifold checks, boundary
// extraction and conormal evaluation.
struct EdgeUse {
  index_t simplex = -1;
  index_t opposite_vertex = -1;  // third vertex of the triangle (3d only)
  bool forward = false;          // edge traversed as (min,max) by the simplex
};

struct PatchTopology {
  // 3d: undirected edge (min,max) -> uses
  std::map<std::pair<index_t, index_t>, std::vector<EdgeUse>> edges;
  // 2d: per vertex, (segment, local position 0|1)
  std::vector<std::vector<std::pair<index_t, int>>> vertex_uses;

  bool is_boundary_edge(index_t u, index_t v) const {
    auto it = edges.find(std::minmax(u, v));
    return it != edges.end() && it->second.size() == 1;
  }
  const EdgeUse* boundary_edge_use(index_t u, index_t v) const {
    auto it = edges.find(std::minmax(u, v));
    if (it == edges.end() || it->second.size() != 1) return nullptr;
    return &it->second.front();
  }
};

PatchTopology build_patch_topology(const SurfacePatch& p);

// Tangent of a junction at entry l, taken from leg 0's chain ordering
// (neighboring entries, wrapping for closed chains). Zero in 2d or when not
// computable.
Vec3 junction_entry_tangent(const Cluster& c, const std::vector<PatchTopology>& topos,
                            const TripleJunction& tj, index_t l);

// Rotational sense of leg j at entry l with o_j = +1: det(mu, nu) in 2d,
// (mu x nu) . tau in 3d, using adjacent-element conormal/normal averages.
// Returns 0 when no adjacent element is usable.
double junction_leg_sense(const Cluster& c, const std::vector<PatchTopology>& topos,
                          const TripleJunction& tj, index_t l, int j, const Vec3& tau);

}  // namespace sdcluster::detail
