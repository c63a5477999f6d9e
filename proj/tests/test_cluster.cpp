#include "sdcluster/cluster.hpp"
#include "sdcluster/scenarios.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sdcluster;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& code, index_t k = -1,
                   index_t l = -1) {
  return std::any_of(rep.violations.begin(), rep.violations.end(), [&](const Violation& v) {
    return v.code == code && (k < 0 || v.k == k) && (l < 0 || v.l == l);
  });
}

}  // namespace

TEST_CASE("a well-formed double bubble validates") {
  const Cluster c = make_double_bubble_2d(25);
  const auto rep = validate_cluster(c);
  CHECK(rep.ok());
  CHECK(rep.summary() == "pass");
  // idempotent
  CHECK(validate_cluster(c).ok());
}

TEST_CASE("perturbed junction vertex is a correspondence mismatch") {
  Cluster c = make_double_bubble_2d(25);
  const TripleJunction& tj = c.junctions[1];
  c.patches[tj.incident[0].first].vertices[tj.correspondence[0][0]] += Vec3(1e-6, 0, 0);
  const auto rep = validate_cluster(c);
  CHECK(!rep.ok());
  CHECK(has_violation(rep, "correspondence_mismatch", 1, 0));
  bool message_found = false;
  for (const auto& v : rep.violations)
    if (v.message.find("(k=1, l=0)") != std::string::npos) message_found = true;
  CHECK(message_found);
}

TEST_CASE("off-plane boundary vertex is reported") {
  Cluster c = make_drop_on_substrate(3, 200, 0.0);
  const index_t v = c.boundaries[0].chain[2];
  c.patches[0].vertices[v].z() = 1e-6;
  const auto rep = validate_cluster(c);
  CHECK(!rep.ok());
  CHECK(has_violation(rep, "off_plane_boundary_vertex", 0));
}

TEST_CASE("non-manifold and inconsistently oriented meshes are rejected") {
  SUBCASE("three segments sharing a vertex") {
    Cluster c;
    c.dim = 2;
    SurfacePatch p;
    p.surface_id = 0;
    p.dim = 2;
    p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0)};
    p.simplices = {{0, 1, -1}, {0, 2, -1}, {0, 3, -1}};
    c.patches.push_back(p);
    CHECK(has_violation(validate_cluster(c), "nonmanifold_face"));
  }
  SUBCASE("polyline traversing a vertex twice in the same direction") {
    Cluster c;
    c.dim = 2;
    SurfacePatch p;
    p.surface_id = 0;
    p.dim = 2;
    p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(2, 0, 0)};
    p.simplices = {{0, 1, -1}, {2, 1, -1}};
    c.patches.push_back(p);
    CHECK(has_violation(validate_cluster(c), "inconsistent_orientation"));
  }
  SUBCASE("triangle pair with flipped winding") {
    Cluster c;
    c.dim = 3;
    SurfacePatch p;
    p.surface_id = 0;
    p.dim = 3;
    p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)};
    p.simplices = {{0, 1, 2}, {1, 3, 2}};
    c.patches.push_back(p);
    CHECK(validate_cluster(c).ok());
    c.patches[0].simplices[1] = {1, 2, 3};
    CHECK(has_violation(validate_cluster(c), "inconsistent_orientation"));
  }
}

TEST_CASE("junction bijectivity") {
  Cluster c = make_double_bubble_3d(220);
  auto& list = c.junctions[0].correspondence[0];
  list[1] = list[0];  // repeat a vertex
  CHECK(has_violation(validate_cluster(c), "correspondence_not_bijective", 0));
}

TEST_CASE("junction orientation signs are checked geometrically") {
  Cluster c = make_double_bubble_2d(25);
  c.junctions[0].orientation[1] *= -1;
  CHECK(has_violation(validate_cluster(c), "junction_orientation", 0));
}

TEST_CASE("region orientation parity check") {
  Cluster c = make_tetrahedron_cluster();
  CHECK(validate_cluster(c).ok());
  c.regions[0].orientation[0] = -1;
  CHECK(has_violation(validate_cluster(c), "region_orientation", 0));
}

TEST_CASE("mesh ratio") {
  SUBCASE("regular 16-gon is exactly 1") {
    const Cluster c = make_regular_polygon_2d(16, 1.0);
    CHECK(mesh_ratio(c) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("segment lengths 1 and 2 give ratio 2") {
    Cluster c;
    c.dim = 2;
    SurfacePatch p;
    p.surface_id = 0;
    p.dim = 2;
    p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(3, 0, 0)};
    p.simplices = {{0, 1, -1}, {1, 2, -1}};
    c.patches.push_back(p);
    CHECK(mesh_ratio(c) == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("degenerate simplex throws") {
    Cluster c;
    c.dim = 2;
    SurfacePatch p;
    p.surface_id = 0;
    p.dim = 2;
    p.vertices = {Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 0, 0)};
    p.simplices = {{0, 1, -1}, {1, 2, -1}};
    c.patches.push_back(p);
    CHECK_THROWS_WITH_AS(mesh_ratio(c), "degenerate simplex", std::runtime_error);
  }
  SUBCASE("invariant under rigid motion and scaling") {
    Cluster c = make_double_bubble_2d(33);
    const double r0 = mesh_ratio(c);
    for (auto& p : c.patches)
      for (auto& q : p.vertices) {
        const Vec3 rotated(0.6 * q.x() - 0.8 * q.y(), 0.8 * q.x() + 0.6 * q.y(), 0.0);
        q = 2.5 * rotated + Vec3(1, 2, 0);
      }
    CHECK(mesh_ratio(c) == doctest::Approx(r0).epsilon(1e-12));
  }
}

TEST_CASE("junction correspondences define bijections between the chains") {
  const Cluster c = make_triple_bubble_3d(900);
  for (const auto& tj : c.junctions) {
    for (int j = 0; j < 3; ++j) {
      auto sorted = tj.correspondence[j];
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      CHECK(sorted.size() == static_cast<size_t>(tj.arity()));
    }
  }
}
