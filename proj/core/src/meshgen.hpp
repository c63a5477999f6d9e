#pragma once

#include "sdcluster/cluster.hpp"

#include <array>
#include <functional>
#include <optional>
#include <vector>

namespace sdcluster::detail {

// --- 2d helpers ---------------------------------------------------------

// Arc-length equidistributed samples of a parametric curve, endpoints forced
// to the given values when provided.
std::vector<Vec3> sample_curve(const std::function<Vec3(double)>& f, double t0, double t1,
                               index_t segments, std::optional<Vec3> front = std::nullopt,
                               std::optional<Vec3> back = std::nullopt);

SurfacePatch polyline_patch(index_t id, const std::vector<Vec3>& pts, bool closed);

// Largest-remainder proportional allocation with a minimum per entry; the
// result sums exactly to total.
std::vector<index_t> allocate_segments(const std::vector<double>& weights, index_t total,
                                       index_t min_per = 2);

// Circular arc from a to b passing through mid, sampled with n segments.
std::vector<Vec3> arc_through(const Vec3& a, const Vec3& mid, const Vec3& b, index_t segments);

// --- 3d ring meshes ------------------------------------------------------

// A triangle mesh built by bridging an ordered stack of rings (open polyline
// rows or closed loops). Ring points are stored contiguously, so callers can
// recover the local index of any ring point.
struct RingMesh {
  std::vector<Vec3> v;
  std::vector<std::array<index_t, 3>> f;
  std::vector<index_t> ring_offset;
  std::vector<index_t> ring_count;
  index_t idx(index_t ring, index_t pos) const { return ring_offset[ring] + pos; }
};

RingMesh bridge_rings(const std::vector<std::vector<Vec3>>& rings, bool closed);

SurfacePatch ring_patch(index_t id, const RingMesh& rm);

// Flips simplices whose orientation vector opposes the given outward field
// (evaluated at the element centroid).
void orient_patch(SurfacePatch& p, const std::function<Vec3(const Vec3&)>& outward);

// Circle ring of n points at height z, radius r, starting at angle phase,
// counterclockwise in the xy plane.
std::vector<Vec3> circle_ring(double r, double z, index_t n, double phase = 0.0);

// Axis-aligned square ring of half-width w at height z with per-side segment
// count n, counterclockwise, starting at corner (+w, -w).
std::vector<Vec3> square_ring(double w, double z, index_t n);

// --- cluster assembly ----------------------------------------------------

// Builds a junction from three (surface, part, chain) legs; legs are sorted
// by surface id, correspondence entries stay aligned.
TripleJunction make_junction(index_t id,
                             std::array<std::tuple<index_t, index_t, std::vector<index_t>>, 3>
                                 legs);

// Sets every junction's orientation signs from the rotational-order
// convention, evaluated on the current geometry.
void auto_orient_junctions(Cluster& c);

}  // namespace sdcluster::detail
