#include "sdcluster/geometry.hpp"

#include "patch_topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdcluster {

namespace {

constexpr double kPi = std::numbers::pi;

double tet_volume(const Vec3& p, const Vec3& q, const Vec3& r, const Vec3& s) {
  return (q - p).cross(r - p).dot(s - p) / 6.0;
}

double tri_area_signed(const Vec3& n, const Vec3& p, const Vec3& q, const Vec3& r) {
  return 0.5 * n.dot((q - p).cross(r - p));
}

}  // namespace

namespace detail {

PatchTopology build_patch_topology(const SurfacePatch& p) {
  PatchTopology topo;
  if (p.dim == 2) {
    topo.vertex_uses.resize(p.vertices.size());
    for (index_t j = 0; j < p.num_simplices(); ++j) {
      for (int a = 0; a < 2; ++a) {
        const index_t v = p.simplices[j][a];
        if (v >= 0 && v < p.num_vertices()) topo.vertex_uses[v].push_back({j, a});
      }
    }
  } else {
    for (index_t j = 0; j < p.num_simplices(); ++j) {
      const auto& s = p.simplices[j];
      for (int a = 0; a < 3; ++a) {
        const index_t u = s[a];
        const index_t v = s[(a + 1) % 3];
        const index_t w = s[(a + 2) % 3];
        if (u < 0 || v < 0 || u >= p.num_vertices() || v >= p.num_vertices()) continue;
        EdgeUse use;
        use.simplex = j;
        use.opposite_vertex = w;
        use.forward = u < v;
        topo.edges[std::minmax(u, v)].push_back(use);
      }
    }
  }
  return topo;
}

}  // namespace detail

Positions positions_of(const Cluster& c) {
  Positions pos(c.patches.size());
  for (size_t i = 0; i < c.patches.size(); ++i) pos[i] = c.patches[i].vertices;
  return pos;
}

void set_positions(Cluster& c, const Positions& pos) {
  for (size_t i = 0; i < c.patches.size(); ++i) c.patches[i].vertices = pos[i];
}

Vec3 orientation_vector(const Vec3* q, int dim) {
  if (dim == 2) return rot_minus90(q[1] - q[0]);
  return (q[1] - q[0]).cross(q[2] - q[0]);
}

ElementGeometry element_geometry(const Vec3* q, int dim) {
  ElementGeometry g;
  g.dim = dim;
  for (int a = 0; a < dim; ++a) g.coords[a] = q[a];
  g.orientation = orientation_vector(q, dim);
  const double norm = g.orientation.norm();
  g.measure = dim == 3 ? 0.5 * norm : norm;
  g.degenerate = !(g.measure > 0.0);
  for (auto& grad : g.basis_gradients) grad = Vec3::Zero();
  if (g.degenerate) return g;
  g.normal = g.orientation / norm;
  if (dim == 2) {
    const Vec3 t = (q[1] - q[0]) / norm;
    g.basis_gradients[0] = -t / norm;
    g.basis_gradients[1] = t / norm;
  } else {
    const double two_area = norm;
    g.basis_gradients[0] = g.normal.cross(q[2] - q[1]) / two_area;
    g.basis_gradients[1] = g.normal.cross(q[0] - q[2]) / two_area;
    g.basis_gradients[2] = g.normal.cross(q[1] - q[0]) / two_area;
  }
  return g;
}

ElementGeometry element_geometry(const SurfacePatch& patch, const std::vector<Vec3>& pos,
                                 index_t j) {
  Vec3 q[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  for (int a = 0; a < patch.dim; ++a) q[a] = pos[patch.simplices[j][a]];
  return element_geometry(q, patch.dim);
}

Vec3 orientation_vector_of(const SurfacePatch& patch, const std::vector<Vec3>& pos, index_t j) {
  Vec3 q[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  for (int a = 0; a < patch.dim; ++a) q[a] = pos[patch.simplices[j][a]];
  return orientation_vector(q, patch.dim);
}

Vec3 weighted_normal(const ElementGeometry& old_elem, const Vec3* new_coords) {
  const double norm = old_elem.orientation.norm();
  if (!(norm > 0.0)) throw std::runtime_error("degenerate simplex");
  bool unchanged = true;
  for (int a = 0; a < old_elem.dim; ++a)
    if (new_coords[a] != old_elem.coords[a]) unchanged = false;
  if (unchanged) return old_elem.normal;
  if (old_elem.dim == 2) {
    const Vec3 a_new = orientation_vector(new_coords, 2);
    return (old_elem.orientation + a_new) / (2.0 * norm);
  }
  Vec3 mid[3];
  for (int a = 0; a < 3; ++a) mid[a] = 0.5 * (old_elem.coords[a] + new_coords[a]);
  const Vec3 a_mid = orientation_vector(mid, 3);
  const Vec3 a_new = orientation_vector(new_coords, 3);
  return (old_elem.orientation + 4.0 * a_mid + a_new) / (6.0 * norm);
}

std::vector<std::vector<Vec3>> weighted_normal_field(const Cluster& topo, const Positions& oldp,
                                                     const Positions& newp) {
  std::vector<std::vector<Vec3>> field(topo.patches.size());
  for (index_t i = 0; i < topo.num_patches(); ++i) {
    const SurfacePatch& patch = topo.patches[i];
    field[i].resize(patch.num_simplices());
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      const ElementGeometry g = element_geometry(patch, oldp[i], j);
      Vec3 q_new[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
      for (int a = 0; a < patch.dim; ++a) q_new[a] = newp[i][patch.simplices[j][a]];
      field[i][j] = weighted_normal(g, q_new);
    }
  }
  return field;
}

Vec3 weighted_xi_3d(const Vec3& a_old, const Vec3& b_old, const Vec3& a_new, const Vec3& b_new,
                    const Vec3& plane_normal) {
  const Vec3 f_old = b_old - a_old;
  const Vec3 f_new = b_new - a_new;
  const double norm = f_old.norm();
  if (!(norm > 0.0)) throw std::runtime_error("degenerate boundary segment");
  return plane_normal.cross(f_old + f_new) / (2.0 * norm);
}

Vec3 xi_2d(const Vec3& plane_normal, const Vec3& nu, const Vec3& mu) {
  return det2(nu, mu) > 0.0 ? rot_plus90(plane_normal) : rot_minus90(plane_normal);
}

namespace {

// Conormal and normal of a patch at one of its boundary vertices, averaged
// over the facets adjacent to the given boundary edges. Returns false if all
// adjacent elements are degenerate. In 2d the end tangent is extrapolated
// from the turning between the last two segments (second order); a plain
// chord direction is biased by half the turning angle, which swamps angle
// diagnostics on coarse curved meshes.
bool boundary_frame(const SurfacePatch& patch, const std::vector<Vec3>& pos,
                    const detail::PatchTopology& topo, index_t v,
                    const std::vector<index_t>& neighbor_vertices, Vec3* mu, Vec3* nu) {
  if (patch.dim == 2) {
    // v is a polyline endpoint; its single segment fixes the orientation.
    if (topo.vertex_uses[v].size() != 1) return false;
    const auto [j, a] = topo.vertex_uses[v][0];
    const index_t w = patch.simplices[j][a == 1 ? 0 : 1];
    Vec3 d1 = pos[v] - pos[w];
    const double len = d1.norm();
    if (!(len > 0.0)) return false;
    d1 /= len;
    Vec3 out = d1;
    for (const auto& [j2, a2] : topo.vertex_uses[w]) {
      if (j2 == j) continue;
      const index_t w2 = patch.simplices[j2][a2 == 1 ? 0 : 1];
      Vec3 d2 = pos[w] - pos[w2];
      if (d2.norm() > 0.0) out = (1.5 * d1 - 0.5 * d2.normalized()).normalized();
    }
    *mu = out;
    *nu = a == 1 ? rot_minus90(out) : Vec3(-rot_minus90(out));
    return true;
  }
  Vec3 mu_sum = Vec3::Zero();
  Vec3 nu_sum = Vec3::Zero();
  int used = 0;
  for (index_t w : neighbor_vertices) {
    const detail::EdgeUse* use = topo.boundary_edge_use(v, w);
    if (use == nullptr) continue;
    const auto& s = patch.simplices[use->simplex];
    Vec3 q[3] = {pos[s[0]], pos[s[1]], pos[s[2]]};
    const ElementGeometry g = element_geometry(q, 3);
    if (g.degenerate) continue;
    const Vec3 a = pos[v];
    const Vec3 b = pos[w];
    const Vec3 opp = pos[use->opposite_vertex];
    Vec3 e = b - a;
    const double elen = e.norm();
    if (!(elen > 0.0)) continue;
    e /= elen;
    Vec3 m = (0.5 * (a + b) - opp);
    m -= m.dot(e) * e;
    const double mlen = m.norm();
    if (!(mlen > 0.0)) continue;
    mu_sum += m / mlen;
    nu_sum += g.normal;
    ++used;
  }
  if (used == 0) return false;
  const double mu_len = mu_sum.norm();
  const double nu_len = nu_sum.norm();
  if (!(mu_len > 0.0) || !(nu_len > 0.0)) return false;
  *mu = mu_sum / mu_len;
  *nu = nu_sum / nu_len;
  return true;
}

}  // namespace

double region_volume(const Cluster& c, const Positions& pos, index_t region_idx) {
  const Region& r = c.regions[region_idx];
  const int d = c.dim;
  const double fact = d == 3 ? 2.0 : 1.0;
  double vol = 0.0;
  for (index_t i : r.surface_set) {
    const SurfacePatch& patch = c.patches[i];
    const double oi = r.orientation[i];
    double s = 0.0;
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      Vec3 q[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
      Vec3 centroid = Vec3::Zero();
      for (int a = 0; a < d; ++a) {
        q[a] = pos[i][patch.simplices[j][a]];
        centroid += q[a];
      }
      centroid /= d;
      const Vec3 A = orientation_vector(q, d);
      s += (centroid - r.reference_point).dot(A) / fact;
    }
    vol += oi * s;
  }
  for (index_t k : r.plane_set) {
    const BoundaryLine& bl = c.boundaries[k];
    const Vec3 n = bl.plane_normal;
    const double ck = (bl.plane_point - r.reference_point).dot(n);
    if (ck == 0.0) continue;
    const Vec3 p_proj = r.reference_point + ck * n;
    const std::vector<Vec3>& bp = pos[bl.incident.first];
    double cone = 0.0;
    if (d == 3) {
      for (index_t l = 0; l + 1 < static_cast<index_t>(bl.chain.size()); ++l) {
        const Vec3 a = bp[bl.chain[l]];
        const Vec3 b = bp[bl.chain[l + 1]];
        Vec3 f = b - a;
        const double flen = f.norm();
        if (!(flen > 0.0)) continue;
        const Vec3 xi = n.cross(f / flen);
        cone += flen * (0.5 * (a + b) - p_proj).dot(xi);
      }
    } else {
      const SurfacePatch& patch = c.patches[bl.incident.first];
      const auto topo = detail::build_patch_topology(patch);
      Vec3 mu, nu;
      if (boundary_frame(patch, bp, topo, bl.chain[0], {}, &mu, &nu)) {
        const Vec3 xi = xi_2d(n, nu, mu);
        cone = (bp[bl.chain[0]] - p_proj).dot(xi);
      }
    }
    vol += -ck * cone;
  }
  return vol / d;
}

double region_volume(const Cluster& c, index_t region_idx) {
  return region_volume(c, positions_of(c), region_idx);
}

double swept_region_volume_change(const Cluster& topo, const Positions& oldp,
                                  const Positions& newp, index_t region_idx) {
  const Region& r = topo.regions[region_idx];
  const int d = topo.dim;
  double dv = 0.0;
  for (index_t i : r.surface_set) {
    const SurfacePatch& patch = topo.patches[i];
    const double oi = r.orientation[i];
    double s = 0.0;
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      const auto& sx = patch.simplices[j];
      if (d == 2) {
        const Vec3 a = oldp[i][sx[0]];
        const Vec3 b = oldp[i][sx[1]];
        const Vec3 a1 = newp[i][sx[0]];
        const Vec3 b1 = newp[i][sx[1]];
        const Vec3 ez(0, 0, 1);
        s += tri_area_signed(ez, a, a1, b1) + tri_area_signed(ez, a, b1, b);
      } else {
        // Sort by global index so shared side quads of neighboring prisms
        // are split along the same diagonal and cancel exactly.
        std::array<index_t, 3> order = {0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](index_t a, index_t b) { return sx[a] < sx[b]; });
        const double parity =
            ((order[0] == 0 && order[1] == 1) || (order[0] == 1 && order[1] == 2) ||
             (order[0] == 2 && order[1] == 0))
                ? 1.0
                : -1.0;
        const Vec3 p0 = oldp[i][sx[order[0]]];
        const Vec3 p1 = oldp[i][sx[order[1]]];
        const Vec3 p2 = oldp[i][sx[order[2]]];
        const Vec3 n0 = newp[i][sx[order[0]]];
        const Vec3 n1 = newp[i][sx[order[1]]];
        const Vec3 n2 = newp[i][sx[order[2]]];
        const double prism = tet_volume(p0, p1, p2, n2) + tet_volume(p0, p1, n2, n1) +
                             tet_volume(p0, n1, n2, n0);
        s += parity * prism;
      }
    }
    dv += oi * s;
  }
  return dv;
}

std::pair<double, double> swept_contact_area_change(const Cluster& topo, const Positions& oldp,
                                                    const Positions& newp, index_t boundary_idx) {
  const BoundaryLine& bl = topo.boundaries[boundary_idx];
  const Vec3 n = bl.plane_normal;
  const index_t i = bl.incident.first;
  const double tol = 1e-9 * std::max(topo.bbox_diameter(), 1.0);
  for (index_t v : bl.chain) {
    if (std::abs((oldp[i][v] - bl.plane_point).dot(n)) > tol ||
        std::abs((newp[i][v] - bl.plane_point).dot(n)) > tol)
      throw std::runtime_error("chains not coplanar");
  }
  double swept = 0.0;
  if (topo.dim == 3) {
    for (index_t l = 0; l + 1 < static_cast<index_t>(bl.chain.size()); ++l) {
      const Vec3 a = oldp[i][bl.chain[l]];
      const Vec3 b = oldp[i][bl.chain[l + 1]];
      const Vec3 a1 = newp[i][bl.chain[l]];
      const Vec3 b1 = newp[i][bl.chain[l + 1]];
      swept += tri_area_signed(n, a, b, b1) + tri_area_signed(n, a, b1, a1);
    }
  } else {
    const SurfacePatch& patch = topo.patches[i];
    const auto ptopo = detail::build_patch_topology(patch);
    Vec3 mu, nu;
    if (!boundary_frame(patch, oldp[i], ptopo, bl.chain[0], {}, &mu, &nu))
      throw std::runtime_error("degenerate boundary segment");
    const Vec3 xi = xi_2d(n, nu, mu);
    swept = xi.dot(newp[i][bl.chain[0]] - oldp[i][bl.chain[0]]);
  }
  return {-swept, swept};
}

double weighted_normal_volume_form(const Cluster& topo, const Positions& oldp,
                                   const Positions& newp, index_t region_idx) {
  const Region& r = topo.regions[region_idx];
  const int d = topo.dim;
  double total = 0.0;
  for (index_t i : r.surface_set) {
    const SurfacePatch& patch = topo.patches[i];
    const double oi = r.orientation[i];
    double s = 0.0;
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      const ElementGeometry g = element_geometry(patch, oldp[i], j);
      Vec3 q_new[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
      for (int a = 0; a < d; ++a) q_new[a] = newp[i][patch.simplices[j][a]];
      const Vec3 nu_half = weighted_normal(g, q_new);
      double acc = 0.0;
      for (int a = 0; a < d; ++a) {
        const index_t v = patch.simplices[j][a];
        acc += (newp[i][v] - oldp[i][v]).dot(nu_half);
      }
      s += (g.measure / d) * acc;
    }
    total += oi * s;
  }
  return total;
}

double weighted_xi_area_form(const Cluster& topo, const Positions& oldp, const Positions& newp,
                             index_t boundary_idx) {
  const BoundaryLine& bl = topo.boundaries[boundary_idx];
  const index_t i = bl.incident.first;
  if (topo.dim == 3) {
    double total = 0.0;
    for (index_t l = 0; l + 1 < static_cast<index_t>(bl.chain.size()); ++l) {
      const index_t va = bl.chain[l];
      const index_t vb = bl.chain[l + 1];
      const Vec3 a = oldp[i][va];
      const Vec3 b = oldp[i][vb];
      const Vec3 xi = weighted_xi_3d(a, b, newp[i][va], newp[i][vb], bl.plane_normal);
      const Vec3 delta_mid = 0.5 * ((newp[i][va] - a) + (newp[i][vb] - b));
      total += (b - a).norm() * xi.dot(delta_mid);
    }
    return total;
  }
  const SurfacePatch& patch = topo.patches[i];
  const auto ptopo = detail::build_patch_topology(patch);
  Vec3 mu, nu;
  if (!boundary_frame(patch, oldp[i], ptopo, bl.chain[0], {}, &mu, &nu))
    throw std::runtime_error("degenerate boundary segment");
  const Vec3 xi = xi_2d(bl.plane_normal, nu, mu);
  return xi.dot(newp[i][bl.chain[0]] - oldp[i][bl.chain[0]]);
}

namespace {

double angle_deg(const Vec3& a, const Vec3& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
  const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

}  // namespace

AngleReport measure_angles(const Cluster& c) {
  AngleReport report;
  std::vector<detail::PatchTopology> topos;
  topos.reserve(c.patches.size());
  for (const auto& p : c.patches) topos.push_back(detail::build_patch_topology(p));

  for (index_t k = 0; k < static_cast<index_t>(c.junctions.size()); ++k) {
    const TripleJunction& tj = c.junctions[k];
    const index_t Z = tj.arity();
    for (index_t l = 0; l < Z; ++l) {
      std::array<Vec3, 3> mu_proj;
      bool ok = true;
      // Junction tangent from the chain neighbors of the first leg (3d).
      Vec3 tau = Vec3::Zero();
      if (c.dim == 3) {
        const auto& chain = tj.correspondence[0];
        const bool closed = Z >= 3 &&
                            (topos[tj.incident[0].first].is_boundary_edge(chain[Z - 1], chain[0]));
        const index_t prev = l > 0 ? l - 1 : (closed ? Z - 1 : l);
        const index_t next = l + 1 < Z ? l + 1 : (closed ? 0 : l);
        const auto& pos = c.patches[tj.incident[0].first].vertices;
        tau = pos[chain[next]] - pos[chain[prev]];
        if (!(tau.norm() > 0.0)) ok = false;
      }
      for (int j = 0; j < 3 && ok; ++j) {
        const index_t s = tj.incident[j].first;
        const auto& chain = tj.correspondence[j];
        std::vector<index_t> neighbors;
        if (l > 0) neighbors.push_back(chain[l - 1]);
        if (l + 1 < Z) neighbors.push_back(chain[l + 1]);
        if (Z >= 3) {
          if (l == 0 && topos[s].is_boundary_edge(chain[Z - 1], chain[0]))
            neighbors.push_back(chain[Z - 1]);
          if (l + 1 == Z && topos[s].is_boundary_edge(chain[Z - 1], chain[0]))
            neighbors.push_back(chain[0]);
        }
        Vec3 mu, nu;
        if (!boundary_frame(c.patches[s], c.patches[s].vertices, topos[s], chain[l], neighbors,
                            &mu, &nu)) {
          ok = false;
          break;
        }
        Vec3 m = mu;
        if (c.dim == 3) {
          const Vec3 t = tau.normalized();
          m -= m.dot(t) * t;
          if (!(m.norm() > 0.0)) {
            ok = false;
            break;
          }
        }
        mu_proj[j] = m.normalized();
      }
      if (!ok) {
        report.warnings.push_back("skipped junction vertex (degenerate adjacent element), k=" +
                                  std::to_string(k) + " l=" + std::to_string(l));
        continue;
      }
      JunctionVertexAngles jva;
      jva.junction = k;
      jva.entry = l;
      jva.angles_deg[0] = angle_deg(-mu_proj[0], -mu_proj[1]);
      jva.angles_deg[1] = angle_deg(-mu_proj[0], -mu_proj[2]);
      jva.angles_deg[2] = angle_deg(-mu_proj[1], -mu_proj[2]);
      report.junction_angles.push_back(jva);
    }
  }

  for (index_t k = 0; k < static_cast<index_t>(c.boundaries.size()); ++k) {
    const BoundaryLine& bl = c.boundaries[k];
    const index_t i = bl.incident.first;
    const SurfacePatch& patch = c.patches[i];
    const Vec3 n = bl.plane_normal;
    const index_t count = bl.closed() ? static_cast<index_t>(bl.chain.size()) - 1
                                      : static_cast<index_t>(bl.chain.size());
    for (index_t l = 0; l < count; ++l) {
      const index_t v = bl.chain[l];
      std::vector<index_t> neighbors;
      Vec3 xi_sum = Vec3::Zero();
      if (c.dim == 3) {
        auto add_seg = [&](index_t a, index_t b, double sign) {
          const Vec3 f = patch.vertices[b] - patch.vertices[a];
          if (f.norm() > 0.0) xi_sum += sign * n.cross(f.normalized());
        };
        if (l > 0) {
          neighbors.push_back(bl.chain[l - 1]);
          add_seg(bl.chain[l - 1], v, 1.0);
        } else if (bl.closed()) {
          neighbors.push_back(bl.chain[bl.chain.size() - 2]);
          add_seg(bl.chain[bl.chain.size() - 2], v, 1.0);
        }
        if (l + 1 < static_cast<index_t>(bl.chain.size())) {
          neighbors.push_back(bl.chain[l + 1]);
          add_seg(v, bl.chain[l + 1], 1.0);
        }
      }
      Vec3 mu, nu;
      if (!boundary_frame(patch, patch.vertices, topos[i], v, neighbors, &mu, &nu)) {
        report.warnings.push_back("skipped boundary vertex (degenerate adjacent element), k=" +
                                  std::to_string(k) + " l=" + std::to_string(l));
        continue;
      }
      Vec3 xi;
      if (c.dim == 2) {
        xi = xi_2d(n, nu, mu);
      } else {
        if (!(xi_sum.norm() > 0.0)) {
          report.warnings.push_back("skipped boundary vertex (degenerate chain segment), k=" +
                                    std::to_string(k) + " l=" + std::to_string(l));
          continue;
        }
        xi = xi_sum.normalized();
      }
      ContactVertexAngle cva;
      cva.boundary = k;
      cva.chain_pos = l;
      cva.angle_deg = std::atan2(-mu.dot(n), mu.dot(xi)) * 180.0 / kPi;
      report.contact_angles.push_back(cva);
    }
  }
  return report;
}

double degenerate_measure_threshold(const Cluster& c) {
  const double diam = c.bbox_diameter();
  return 1e-14 * (c.dim == 3 ? diam * diam : diam);
}

}  // namespace sdcluster
