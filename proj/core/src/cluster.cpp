#include "sdcluster/cluster.hpp"

#include "sdcluster/geometry.hpp"
#include "patch_topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace sdcluster {

namespace {

constexpr double kCoincidenceTol = 1e-12;

void add(std::vector<Violation>& v, std::string code, std::string msg, index_t k = -1,
         index_t l = -1) {
  v.push_back({std::move(code), std::move(msg), k, l});
}

// Ray-parity point-in-region test over the region's surface facets.
// Retries a few deterministic directions when a hit is near-degenerate.
int ray_parity(const Cluster& c, const Region& r, const Vec3& origin, const Vec3& preferred) {
  const double diam = std::max(c.bbox_diameter(), 1.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec3 dir = preferred;
    if (attempt > 0 || dir.norm() == 0.0) {
      const double a = 0.7548776662466927 * (attempt + 1);  // deterministic sweep
      const double b = 0.5698402909980532 * (attempt + 1);
      dir = c.dim == 2 ? Vec3(std::cos(6.28 * a), std::sin(6.28 * a), 0.0)
                       : Vec3(std::cos(6.28 * a) * std::sin(3.14 * b),
                              std::sin(6.28 * a) * std::sin(3.14 * b), std::cos(3.14 * b));
    }
    dir.normalize();
    int crossings = 0;
    bool degenerate_hit = false;
    for (index_t i : r.surface_set) {
      const SurfacePatch& patch = c.patches[i];
      for (index_t j = 0; j < patch.num_simplices() && !degenerate_hit; ++j) {
        const auto& s = patch.simplices[j];
        if (c.dim == 2) {
          // segment vs ray in the plane
          const Vec3 p = patch.vertices[s[0]];
          const Vec3 q = patch.vertices[s[1]];
          const Vec3 e = q - p;
          const double denom = det2(dir, e);
          if (std::abs(denom) < 1e-14) continue;
          const Vec3 w = p - origin;
          const double t = det2(w, e) / denom;
          const double u = det2(w, dir) / denom;
          if (t <= 0.0) continue;
          if (u < -1e-12 || u > 1.0 + 1e-12) continue;
          if (u < 1e-9 || u > 1.0 - 1e-9) {
            degenerate_hit = true;
            break;
          }
          ++crossings;
        } else {
          // Moller-Trumbore
          const Vec3 p0 = patch.vertices[s[0]];
          const Vec3 e1 = patch.vertices[s[1]] - p0;
          const Vec3 e2 = patch.vertices[s[2]] - p0;
          const Vec3 h = dir.cross(e2);
          const double det = e1.dot(h);
          if (std::abs(det) < 1e-16 * diam * diam) continue;
          const Vec3 w = origin - p0;
          const double u = w.dot(h) / det;
          const Vec3 qv = w.cross(e1);
          const double v = dir.dot(qv) / det;
          const double t = e2.dot(qv) / det;
          if (t <= 0.0) continue;
          if (u < -1e-12 || v < -1e-12 || u + v > 1.0 + 1e-12) continue;
          if (u < 1e-9 || v < 1e-9 || u + v > 1.0 - 1e-9) {
            degenerate_hit = true;
            break;
          }
          ++crossings;
        }
      }
      if (degenerate_hit) break;
    }
    if (!degenerate_hit) return crossings;
  }
  return -1;
}

}  // namespace

double Cluster::bbox_diameter() const {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  bool any = false;
  for (const auto& p : patches)
    for (const auto& q : p.vertices) {
      lo = lo.cwiseMin(q);
      hi = hi.cwiseMax(q);
      any = true;
    }
  if (!any) return 0.0;
  return (hi - lo).norm();
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "pass";
  std::ostringstream os;
  os << violations.size() << " violation(s):\n";
  for (const auto& v : violations) {
    os << "  [" << v.code << "] " << v.message;
    if (v.k >= 0) os << " (k=" << v.k << (v.l >= 0 ? ", l=" + std::to_string(v.l) : "") << ")";
    os << "\n";
  }
  return os.str();
}

ValidationReport validate_cluster(const Cluster& c) {
  ValidationReport rep;
  auto& out = rep.violations;
  const int d = c.dim;
  if (d != 2 && d != 3) {
    add(out, "bad_dimension", "cluster dimension must be 2 or 3");
    return rep;
  }
  for (index_t i = 0; i < c.num_patches(); ++i) {
    if (c.patches[i].dim != d)
      add(out, "mixed_dimension", "patch " + std::to_string(i) + " has dim != cluster dim");
    if (c.patches[i].sigma <= 0.0)
      add(out, "bad_sigma", "patch " + std::to_string(i) + " has non-positive sigma");
  }
  if (!out.empty()) return rep;

  // Per-patch mesh sanity.
  std::vector<detail::PatchTopology> topos;
  topos.reserve(c.patches.size());
  for (index_t i = 0; i < c.num_patches(); ++i) {
    const SurfacePatch& p = c.patches[i];
    for (index_t j = 0; j < p.num_simplices(); ++j) {
      const auto& s = p.simplices[j];
      bool in_range = true;
      for (int a = 0; a < d; ++a)
        if (s[a] < 0 || s[a] >= p.num_vertices()) in_range = false;
      if (!in_range) {
        add(out, "index_out_of_range",
            "patch " + std::to_string(i) + " simplex " + std::to_string(j) +
                " has out-of-range vertex index");
        continue;
      }
      bool distinct = d == 2 ? s[0] != s[1] : (s[0] != s[1] && s[1] != s[2] && s[0] != s[2]);
      if (!distinct)
        add(out, "repeated_vertex",
            "patch " + std::to_string(i) + " simplex " + std::to_string(j) +
                " repeats a vertex index");
      else if (orientation_vector_of(p, p.vertices, j).norm() == 0.0)
        add(out, "degenerate_simplex",
            "patch " + std::to_string(i) + " simplex " + std::to_string(j) +
                " has zero orientation vector");
    }
    topos.push_back(detail::build_patch_topology(p));
    if (d == 2) {
      for (index_t v = 0; v < p.num_vertices(); ++v) {
        const auto& uses = topos[i].vertex_uses[v];
        if (uses.size() > 2)
          add(out, "nonmanifold_face",
              "patch " + std::to_string(i) + " vertex " + std::to_string(v) +
                  " belongs to more than two segments");
        else if (uses.size() == 2 && uses[0].second == uses[1].second)
          add(out, "inconsistent_orientation",
              "patch " + std::to_string(i) + " vertex " + std::to_string(v) +
                  " is traversed twice in the same direction");
      }
    } else {
      for (const auto& [key, uses] : topos[i].edges) {
        if (uses.size() > 2)
          add(out, "nonmanifold_face",
              "patch " + std::to_string(i) + " edge (" + std::to_string(key.first) + "," +
                  std::to_string(key.second) + ") belongs to more than two triangles");
        else if (uses.size() == 2 && uses[0].forward == uses[1].forward)
          add(out, "inconsistent_orientation",
              "patch " + std::to_string(i) + " edge (" + std::to_string(key.first) + "," +
                  std::to_string(key.second) + ") is traversed twice in the same direction");
      }
    }
  }

  // Distinct (surface, part) labels across junction and boundary incidences.
  std::set<std::pair<index_t, index_t>> used_parts;
  auto claim_part = [&](std::pair<index_t, index_t> sp, const std::string& what, index_t k) {
    if (!used_parts.insert(sp).second)
      add(out, "duplicate_boundary_part",
          what + " reuses boundary part (" + std::to_string(sp.first) + "," +
              std::to_string(sp.second) + ")",
          k);
  };

  // Junctions.
  for (index_t k = 0; k < static_cast<index_t>(c.junctions.size()); ++k) {
    const TripleJunction& tj = c.junctions[k];
    bool surfaces_ok = true;
    for (int j = 0; j < 3; ++j) {
      const index_t s = tj.incident[j].first;
      if (s < 0 || s >= c.num_patches()) {
        add(out, "index_out_of_range", "junction references missing surface", k);
        surfaces_ok = false;
      }
      if (tj.orientation[j] != 1 && tj.orientation[j] != -1)
        add(out, "junction_orientation", "junction orientation entries must be +-1", k);
    }
    if (!surfaces_ok) continue;
    if (!(tj.incident[0].first < tj.incident[1].first &&
          tj.incident[1].first < tj.incident[2].first))
      add(out, "junction_surface_order", "junction surfaces must satisfy s1 < s2 < s3", k);
    for (int j = 0; j < 3; ++j) claim_part(tj.incident[j], "junction", k);

    const size_t Z = tj.correspondence[0].size();
    if (Z < 1 || tj.correspondence[1].size() != Z || tj.correspondence[2].size() != Z) {
      add(out, "junction_arity", "correspondence lists must have equal length >= 1", k);
      continue;
    }
    bool entries_ok = true;
    for (int j = 0; j < 3; ++j) {
      const SurfacePatch& p = c.patches[tj.incident[j].first];
      std::set<index_t> seen;
      for (index_t v : tj.correspondence[j]) {
        if (v < 0 || v >= p.num_vertices()) {
          add(out, "index_out_of_range", "junction correspondence vertex out of range", k);
          entries_ok = false;
          break;
        }
        if (!seen.insert(v).second) {
          add(out, "correspondence_not_bijective",
              "junction correspondence repeats a vertex on surface " +
                  std::to_string(tj.incident[j].first),
              k);
          entries_ok = false;
          break;
        }
      }
    }
    if (!entries_ok) continue;
    for (index_t l = 0; l < static_cast<index_t>(Z); ++l) {
      const Vec3 q1 = c.patches[tj.incident[0].first].vertices[tj.correspondence[0][l]];
      const Vec3 q2 = c.patches[tj.incident[1].first].vertices[tj.correspondence[1][l]];
      const Vec3 q3 = c.patches[tj.incident[2].first].vertices[tj.correspondence[2][l]];
      if ((q1 - q2).norm() > kCoincidenceTol || (q1 - q3).norm() > kCoincidenceTol ||
          (q2 - q3).norm() > kCoincidenceTol) {
        add(out, "correspondence_mismatch",
            "correspondence mismatch at (k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                ")",
            k, l);
      }
    }
  }

  // Boundary lines.
  for (index_t k = 0; k < static_cast<index_t>(c.boundaries.size()); ++k) {
    const BoundaryLine& bl = c.boundaries[k];
    const index_t s = bl.incident.first;
    if (s < 0 || s >= c.num_patches()) {
      add(out, "index_out_of_range", "boundary line references missing surface", k);
      continue;
    }
    claim_part(bl.incident, "boundary line", k);
    if (std::abs(bl.plane_normal.norm() - 1.0) > 1e-12)
      add(out, "nonunit_plane_normal", "|n_k| must be 1", k);
    if (d == 2 && bl.plane_normal.z() != 0.0)
      add(out, "nonplanar_normal", "2d plane normal must have zero z component", k);
    if (bl.chain.empty() || (d == 2 && bl.chain.size() != 1) || (d == 3 && bl.chain.size() < 2)) {
      add(out, "bad_chain", "boundary chain has the wrong length", k);
      continue;
    }
    const SurfacePatch& p = c.patches[s];
    bool range_ok = true;
    for (index_t v : bl.chain)
      if (v < 0 || v >= p.num_vertices()) range_ok = false;
    if (!range_ok) {
      add(out, "index_out_of_range", "boundary chain vertex out of range", k);
      continue;
    }
    for (index_t l = 0; l < static_cast<index_t>(bl.chain.size()); ++l) {
      const double off = std::abs((p.vertices[bl.chain[l]] - bl.plane_point).dot(bl.plane_normal));
      if (off > kCoincidenceTol)
        add(out, "off_plane_boundary_vertex",
            "off-plane boundary vertex at (k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                "), offset " + format_float17(off),
            k, l);
    }
    if (d == 3) {
      for (index_t l = 0; l + 1 < static_cast<index_t>(bl.chain.size()); ++l) {
        if (!topos[s].is_boundary_edge(bl.chain[l], bl.chain[l + 1])) {
          add(out, "chain_not_boundary_path",
              "boundary chain segment is not a boundary edge of the patch", k, l);
          continue;
        }
        // Chain ordering along mu x nu, evaluated on the facet behind the
        // boundary edge.
        const auto* use = topos[s].boundary_edge_use(bl.chain[l], bl.chain[l + 1]);
        const Vec3 a = p.vertices[bl.chain[l]];
        const Vec3 b = p.vertices[bl.chain[l + 1]];
        const Vec3 opp = p.vertices[use->opposite_vertex];
        Vec3 f = b - a;
        if (f.norm() == 0.0) continue;
        const ElementGeometry g = element_geometry(p, p.vertices, use->simplex);
        if (g.degenerate) continue;
        Vec3 m = 0.5 * (a + b) - opp;  // outward conormal direction
        m -= m.dot(f.normalized()) * f.normalized();
        if (f.dot(m.cross(g.normal)) < 0.0)
          add(out, "chain_orientation",
              "boundary chain is not ordered along mu x nu", k, l);
      }
    }
  }

  // No boundary vertex may appear in any junction correspondence.
  for (index_t k = 0; k < static_cast<index_t>(c.boundaries.size()); ++k) {
    const BoundaryLine& bl = c.boundaries[k];
    if (bl.incident.first < 0 || bl.incident.first >= c.num_patches()) continue;
    for (const auto& tj : c.junctions)
      for (int j = 0; j < 3; ++j) {
        if (tj.incident[j].first != bl.incident.first) continue;
        for (index_t v : bl.chain)
          if (std::find(tj.correspondence[j].begin(), tj.correspondence[j].end(), v) !=
              tj.correspondence[j].end())
            add(out, "boundary_vertex_in_junction",
                "boundary chain vertex also appears in a junction correspondence", k);
      }
  }

  // Junction orientation convention: (o_j nu_j, mu_j) must share a common
  // rotational order in the plane normal to the junction.
  for (index_t k = 0; k < static_cast<index_t>(c.junctions.size()); ++k) {
    const TripleJunction& tj = c.junctions[k];
    bool ids_ok = true;
    for (int j = 0; j < 3; ++j) {
      const index_t s = tj.incident[j].first;
      if (s < 0 || s >= c.num_patches()) ids_ok = false;
    }
    const size_t Z = ids_ok ? tj.correspondence[0].size() : 0;
    if (!ids_ok || Z < 1 || tj.correspondence[1].size() != Z || tj.correspondence[2].size() != Z)
      continue;
    // One well-shaped entry suffices for the convention check.
    for (index_t l = 0; l < static_cast<index_t>(Z); ++l) {
      const Vec3 tau = detail::junction_entry_tangent(c, topos, tj, l);
      if (d == 3 && !(tau.norm() > 0.0)) continue;
      std::array<double, 3> sense{};
      bool ok = true;
      for (int j = 0; j < 3; ++j) {
        sense[j] = tj.orientation[j] * detail::junction_leg_sense(c, topos, tj, l, j, tau);
        if (sense[j] == 0.0) ok = false;
      }
      if (!ok) continue;
      if (!(sense[0] * sense[1] > 0.0 && sense[0] * sense[2] > 0.0))
        add(out, "junction_orientation",
            "junction orientation signs violate the rotational-order convention", k, l);
      break;  // one verified entry per junction
    }
  }

  // Regions.
  for (index_t rl = 0; rl < static_cast<index_t>(c.regions.size()); ++rl) {
    const Region& r = c.regions[rl];
    if (r.orientation.size() != static_cast<size_t>(c.num_patches())) {
      add(out, "region_orientation_size",
          "region orientation vector must have one entry per surface", rl);
      continue;
    }
    bool refs_ok = true;
    for (index_t i : r.surface_set)
      if (i < 0 || i >= c.num_patches()) refs_ok = false;
    for (index_t k : r.plane_set)
      if (k < 0 || k >= static_cast<index_t>(c.boundaries.size())) refs_ok = false;
    if (!refs_ok) {
      add(out, "index_out_of_range", "region references a missing surface or boundary", rl);
      continue;
    }
    if (r.surface_set.empty()) {
      add(out, "empty_region", "region has no bounding surfaces", rl);
      continue;
    }
    for (index_t i : r.surface_set)
      if (r.orientation[i] != 1 && r.orientation[i] != -1)
        add(out, "region_orientation", "region orientation entries must be +-1 on its surfaces",
            rl);

    // Outer-normal parity check from a sampled facet centroid.
    const index_t i0 = r.surface_set.front();
    const SurfacePatch& patch = c.patches[i0];
    index_t j0 = -1;
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      if (orientation_vector_of(patch, patch.vertices, j).norm() > 0.0) {
        j0 = j;
        break;
      }
    }
    if (j0 < 0) continue;
    const ElementGeometry g = element_geometry(patch, patch.vertices, j0);
    Vec3 centroid = Vec3::Zero();
    double min_edge = std::numeric_limits<double>::max();
    for (int a = 0; a < d; ++a) {
      centroid += g.coords[a];
      min_edge = std::min(min_edge, (g.coords[(a + 1) % d] - g.coords[a]).norm());
    }
    centroid /= d;
    const double eps = 0.05 * min_edge;
    Vec3 preferred = Vec3::Zero();
    for (index_t k : r.plane_set) preferred += c.boundaries[k].plane_normal;
    const Vec3 outward = r.orientation[i0] * g.normal;
    const int inside = ray_parity(c, r, centroid - eps * outward, preferred);
    const int outside = ray_parity(c, r, centroid + eps * outward, preferred);
    if (inside >= 0 && outside >= 0) {
      if (inside % 2 != 1 || outside % 2 != 0)
        add(out, "region_orientation",
            "region orientation is not the outer normal (parity check failed)", rl);
    }
  }

  return rep;
}

namespace detail {

Vec3 junction_entry_tangent(const Cluster& c, const std::vector<PatchTopology>& topos,
                            const TripleJunction& tj, index_t l) {
  if (c.dim == 2) return Vec3::Zero();
  const index_t s0 = tj.incident[0].first;
  const auto& chain = tj.correspondence[0];
  const index_t Z = static_cast<index_t>(chain.size());
  const bool closed = Z >= 3 && topos[s0].is_boundary_edge(chain[Z - 1], chain[0]);
  const index_t prev = l > 0 ? l - 1 : (closed ? Z - 1 : l);
  const index_t next = l + 1 < Z ? l + 1 : (closed ? 0 : l);
  if (prev == next) return Vec3::Zero();
  const auto& pos = c.patches[s0].vertices;
  Vec3 tau = pos[chain[next]] - pos[chain[prev]];
  const double n = tau.norm();
  return n > 0.0 ? Vec3(tau / n) : Vec3::Zero();
}

double junction_leg_sense(const Cluster& c, const std::vector<PatchTopology>& topos,
                          const TripleJunction& tj, index_t l, int j, const Vec3& tau) {
  const index_t s = tj.incident[j].first;
  const SurfacePatch& patch = c.patches[s];
  const auto& chain = tj.correspondence[j];
  const index_t Z = static_cast<index_t>(chain.size());
  Vec3 mu_sum = Vec3::Zero(), nu_sum = Vec3::Zero();
  int used = 0;
  if (c.dim == 2) {
    const auto& uses = topos[s].vertex_uses[chain[l]];
    if (uses.size() != 1) return 0.0;
    const auto [jj, aa] = uses[0];
    const Vec3 q0 = patch.vertices[patch.simplices[jj][0]];
    const Vec3 q1 = patch.vertices[patch.simplices[jj][1]];
    const Vec3 t = q1 - q0;
    if (!(t.norm() > 0.0)) return 0.0;
    nu_sum = rot_minus90(t.normalized());
    mu_sum = (aa == 1 ? t : Vec3(-t)).normalized();
    used = 1;
  } else {
    std::vector<index_t> neighbors;
    if (l > 0) neighbors.push_back(chain[l - 1]);
    if (l + 1 < Z) neighbors.push_back(chain[l + 1]);
    if (Z >= 3 && topos[s].is_boundary_edge(chain[Z - 1], chain[0])) {
      if (l == 0) neighbors.push_back(chain[Z - 1]);
      if (l + 1 == Z) neighbors.push_back(chain[0]);
    }
    for (index_t w : neighbors) {
      const auto* use = topos[s].boundary_edge_use(chain[l], w);
      if (use == nullptr) continue;
      const ElementGeometry g = element_geometry(patch, patch.vertices, use->simplex);
      if (g.degenerate) continue;
      const Vec3 a = patch.vertices[chain[l]];
      const Vec3 b = patch.vertices[w];
      Vec3 e = b - a;
      if (!(e.norm() > 0.0)) continue;
      e.normalize();
      Vec3 m = 0.5 * (a + b) - patch.vertices[use->opposite_vertex];
      m -= m.dot(e) * e;
      if (!(m.norm() > 0.0)) continue;
      mu_sum += m.normalized();
      nu_sum += g.normal;
      ++used;
    }
  }
  if (used == 0 || !(mu_sum.norm() > 0.0) || !(nu_sum.norm() > 0.0)) return 0.0;
  const Vec3 mu = mu_sum.normalized();
  const Vec3 nu = nu_sum.normalized();
  return c.dim == 2 ? det2(mu, nu) : mu.cross(nu).dot(tau);
}

}  // namespace detail

double mesh_ratio(const Cluster& c) {
  double worst = 1.0;
  for (const auto& p : c.patches) {
    double lo = std::numeric_limits<double>::max();
    double hi = 0.0;
    for (index_t j = 0; j < p.num_simplices(); ++j) {
      const Vec3 a = orientation_vector_of(p, p.vertices, j);
      const double measure = p.dim == 3 ? 0.5 * a.norm() : a.norm();
      if (!(measure > 0.0)) throw std::runtime_error("degenerate simplex");
      lo = std::min(lo, measure);
      hi = std::max(hi, measure);
    }
    if (p.num_simplices() > 0) worst = std::max(worst, hi / lo);
  }
  return worst;
}

}  // namespace sdcluster
