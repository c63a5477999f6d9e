#pragma once

#include "sdcluster/cluster.hpp"

#include <string>
#include <vector>

namespace sdcluster {

/// Two 2:1 semi-ellipses and a straight line meeting at two triple junction
/// points; two enclosed regions. K = requested total vertex count (+-5%).
Cluster make_double_bubble_2d(index_t K);

/// Standard 2d n-bubble configurations, n in [2, 7]: n = 2 delegates to the
/// double bubble, n = 3 uses three interfaces meeting at a central junction,
/// n >= 4 uses a central bubble ringed by n-1 petals. Throws for n outside
/// [2, 7].
Cluster make_standard_bubble_2d(int n_bubbles, index_t K);

/// Two halfspheres and a disk meeting at a triple junction circle.
Cluster make_double_bubble_3d(index_t K);

/// Ball cut by three half-disks meeting along a diameter: three spherical
/// lunes, three flat half-disks, four junction lines, quadruple points at
/// the poles.
Cluster make_triple_bubble_3d(index_t K);

/// Lower half-ball plus three wedges over it: ten patches, ten junction
/// lines, quadruple points at the disk center, the north pole and on the
/// equator.
Cluster make_quadruple_bubble_3d(index_t K);

/// Semicircle (d = 2) or hemisphere (d = 3) of unit radius attached to the
/// substrate plane through the origin, with contact parameter rho on every
/// boundary line.
Cluster make_drop_on_substrate(int dim, index_t K, double rho);

/// Central bubble between two caps inside the square cylinder
/// [-3/2,3/2]^2 x R, with a flat sheet attached to the four walls; four
/// boundary lines carrying rho.
Cluster make_cylinder_cluster(index_t K, double rho);

/// Flat square sheet spanning the cylinder cross-section, attached to the
/// four walls; a discrete equilibrium for rho = 0.
Cluster make_flat_plate(index_t K);

/// Single closed curve: regular N-gon of given circumradius (exact discrete
/// equilibrium of the scheme) and its arc-length-equidistributed circle.
Cluster make_regular_polygon_2d(index_t N, double radius = 1.0);

/// Closed unit-edge regular tetrahedron / octahedron surfaces (one patch,
/// one region); small fixtures for the volume identities.
Cluster make_tetrahedron_cluster();
Cluster make_octahedron_cluster();

/// Closed sphere mesh of radius 1 with about K vertices.
Cluster make_sphere_cluster(index_t K);

struct ScenarioSpec {
  std::string name;
  index_t K = 0;        // 0 = scenario default
  int n_bubbles = 2;    // standard_bubble_2d only
  int dim = 3;          // drop only
  double rho = 0.0;     // drop / cylinder
};

struct ScenarioInfo {
  std::string name;
  std::string parameters;
  std::string description;
};

std::vector<ScenarioInfo> scenario_registry();

/// Dispatch by name; throws std::invalid_argument for unknown names.
Cluster make_scenario(const ScenarioSpec& spec);

}  // namespace sdcluster
