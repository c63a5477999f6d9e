#include "meshgen.hpp"

#include "patch_topology.hpp"
#include "sdcluster/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace sdcluster::detail {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<Vec3> sample_curve(const std::function<Vec3(double)>& f, double t0, double t1,
                               index_t segments, std::optional<Vec3> front,
                               std::optional<Vec3> back) {
  if (segments < 1) throw std::invalid_argument("need at least one segment");
  const index_t fine = std::max<index_t>(200, segments * 20);
  std::vector<double> ts(fine + 1), arc(fine + 1, 0.0);
  std::vector<Vec3> pts(fine + 1);
  for (index_t k = 0; k <= fine; ++k) {
    ts[k] = t0 + (t1 - t0) * k / fine;
    pts[k] = f(ts[k]);
    if (k > 0) arc[k] = arc[k - 1] + (pts[k] - pts[k - 1]).norm();
  }
  std::vector<Vec3> out(segments + 1);
  out[0] = pts[0];
  out[segments] = pts[fine];
  index_t cursor = 0;
  for (index_t s = 1; s < segments; ++s) {
    const double target = arc[fine] * s / segments;
    while (cursor + 1 < fine && arc[cursor + 1] < target) ++cursor;
    const double seg = arc[cursor + 1] - arc[cursor];
    const double w = seg > 0.0 ? (target - arc[cursor]) / seg : 0.0;
    out[s] = (1.0 - w) * pts[cursor] + w * pts[cursor + 1];
  }
  if (front) out.front() = *front;
  if (back) out.back() = *back;
  return out;
}

SurfacePatch polyline_patch(index_t id, const std::vector<Vec3>& pts, bool closed) {
  SurfacePatch p;
  p.surface_id = id;
  p.dim = 2;
  p.vertices = pts;
  const index_t n = static_cast<index_t>(pts.size());
  for (index_t k = 0; k + 1 < n; ++k) p.simplices.push_back({k, k + 1, -1});
  if (closed) p.simplices.push_back({n - 1, 0, -1});
  return p;
}

std::vector<index_t> allocate_segments(const std::vector<double>& weights, index_t total,
                                       index_t min_per) {
  const index_t n = static_cast<index_t>(weights.size());
  if (total < n * min_per) total = n * min_per;
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<index_t> out(n, min_per);
  std::vector<std::pair<double, index_t>> remainders;
  index_t assigned = 0;
  for (index_t i = 0; i < n; ++i) {
    const double ideal = total * weights[i] / wsum;
    out[i] = std::max<index_t>(min_per, static_cast<index_t>(ideal));
    assigned += out[i];
    remainders.push_back({ideal - std::floor(ideal), i});
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  index_t cursor = 0;
  while (assigned < total) {
    out[remainders[cursor % n].second] += 1;
    ++assigned;
    ++cursor;
  }
  while (assigned > total) {
    auto& v = out[remainders[cursor % n].second];
    if (v > min_per) {
      --v;
      --assigned;
    }
    ++cursor;
  }
  return out;
}

std::vector<Vec3> arc_through(const Vec3& a, const Vec3& mid, const Vec3& b, index_t segments) {
  // Circumcenter in the plane (z = 0).
  const double d = 2.0 * (a.x() * (mid.y() - b.y()) + mid.x() * (b.y() - a.y()) +
                          b.x() * (a.y() - mid.y()));
  if (std::abs(d) < 1e-14) {
    // nearly straight: chord
    std::vector<Vec3> out(segments + 1);
    for (index_t k = 0; k <= segments; ++k)
      out[k] = a + (b - a) * (static_cast<double>(k) / segments);
    out.front() = a;
    out.back() = b;
    return out;
  }
  const double a2 = a.squaredNorm(), m2 = mid.squaredNorm(), b2 = b.squaredNorm();
  Vec3 center((a2 * (mid.y() - b.y()) + m2 * (b.y() - a.y()) + b2 * (a.y() - mid.y())) / d,
              (a2 * (b.x() - mid.x()) + m2 * (a.x() - b.x()) + b2 * (mid.x() - a.x())) / d, 0.0);
  const double radius = (a - center).norm();
  double ta = std::atan2(a.y() - center.y(), a.x() - center.x());
  double tm = std::atan2(mid.y() - center.y(), mid.x() - center.x());
  double tb = std::atan2(b.y() - center.y(), b.x() - center.x());
  // Choose the branch a -> mid -> b.
  auto wrap_up = [](double from, double t) {
    while (t < from) t += 2.0 * kPi;
    return t;
  };
  double tm_ccw = wrap_up(ta, tm), tb_ccw = wrap_up(ta, tb);
  const bool ccw = tm_ccw < tb_ccw;
  std::vector<Vec3> out(segments + 1);
  for (index_t k = 0; k <= segments; ++k) {
    double t;
    if (ccw) {
      t = ta + (tb_ccw - ta) * k / segments;
    } else {
      double tm_cw = ta - (2.0 * kPi - (tm_ccw - ta));
      (void)tm_cw;
      const double span = 2.0 * kPi - (tb_ccw - ta);
      t = ta - span * k / segments;
    }
    out[k] = center + radius * Vec3(std::cos(t), std::sin(t), 0.0);
  }
  out.front() = a;
  out.back() = b;
  return out;
}

RingMesh bridge_rings(const std::vector<std::vector<Vec3>>& rings, bool closed) {
  RingMesh rm;
  rm.ring_offset.reserve(rings.size());
  for (const auto& ring : rings) {
    rm.ring_offset.push_back(static_cast<index_t>(rm.v.size()));
    rm.ring_count.push_back(static_cast<index_t>(ring.size()));
    rm.v.insert(rm.v.end(), ring.begin(), ring.end());
  }
  for (size_t t = 0; t + 1 < rings.size(); ++t) {
    const index_t na = rm.ring_count[t];
    const index_t nb = rm.ring_count[t + 1];
    const index_t oa = rm.ring_offset[t];
    const index_t ob = rm.ring_offset[t + 1];
    if (closed) {
      if (na == 1 && nb == 1) continue;
      index_t i = 0, j = 0;
      while (i < na || j < nb) {
        const bool can_a = i < na && na > 1;
        const bool can_b = j < nb && nb > 1;
        bool adv_a;
        if (can_a && can_b)
          adv_a = static_cast<double>(i + 1) * nb <= static_cast<double>(j + 1) * na;
        else if (can_a)
          adv_a = true;
        else if (can_b)
          adv_a = false;
        else
          break;
        if (adv_a) {
          rm.f.push_back({oa + i % na, oa + (i + 1) % na, ob + j % nb});
          ++i;
        } else {
          rm.f.push_back({oa + i % na, ob + (j + 1) % nb, ob + j % nb});
          ++j;
        }
      }
    } else {
      index_t i = 0, j = 0;
      while (i + 1 < na || j + 1 < nb) {
        const bool can_a = i + 1 < na;
        const bool can_b = j + 1 < nb;
        bool adv_a;
        if (can_a && can_b)
          adv_a = static_cast<double>(i + 1) * (nb - 1) <= static_cast<double>(j + 1) * (na - 1);
        else
          adv_a = can_a;
        if (adv_a) {
          rm.f.push_back({oa + i, oa + i + 1, ob + j});
          ++i;
        } else {
          rm.f.push_back({oa + i, ob + j + 1, ob + j});
          ++j;
        }
      }
    }
  }
  return rm;
}

SurfacePatch ring_patch(index_t id, const RingMesh& rm) {
  SurfacePatch p;
  p.surface_id = id;
  p.dim = 3;
  p.vertices = rm.v;
  p.simplices = rm.f;
  return p;
}

void orient_patch(SurfacePatch& p, const std::function<Vec3(const Vec3&)>& outward) {
  for (auto& s : p.simplices) {
    Vec3 q[3] = {p.vertices[s[0]], p.vertices[s[1]], p.vertices[s[2]]};
    const Vec3 a = orientation_vector(q, 3);
    const Vec3 centroid = (q[0] + q[1] + q[2]) / 3.0;
    if (a.dot(outward(centroid)) < 0.0) std::swap(s[1], s[2]);
  }
}

std::vector<Vec3> circle_ring(double r, double z, index_t n, double phase) {
  std::vector<Vec3> out(n);
  for (index_t k = 0; k < n; ++k) {
    const double t = phase + 2.0 * kPi * k / n;
    out[k] = Vec3(r * std::cos(t), r * std::sin(t), z);
  }
  return out;
}

std::vector<Vec3> square_ring(double w, double z, index_t n) {
  std::vector<Vec3> out;
  out.reserve(4 * n);
  auto side = [&](Vec3 from, Vec3 to) {
    for (index_t k = 0; k < n; ++k) out.push_back(from + (to - from) * (static_cast<double>(k) / n));
  };
  side(Vec3(w, -w, z), Vec3(w, w, z));
  side(Vec3(w, w, z), Vec3(-w, w, z));
  side(Vec3(-w, w, z), Vec3(-w, -w, z));
  side(Vec3(-w, -w, z), Vec3(w, -w, z));
  return out;
}

TripleJunction make_junction(index_t id,
                             std::array<std::tuple<index_t, index_t, std::vector<index_t>>, 3>
                                 legs) {
  std::sort(legs.begin(), legs.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) < std::get<1>(b);
  });
  TripleJunction tj;
  tj.tj_id = id;
  for (int j = 0; j < 3; ++j) {
    tj.incident[j] = {std::get<0>(legs[j]), std::get<1>(legs[j])};
    tj.correspondence[j] = std::move(std::get<2>(legs[j]));
  }
  return tj;
}

void auto_orient_junctions(Cluster& c) {
  std::vector<PatchTopology> topos;
  topos.reserve(c.patches.size());
  for (const auto& p : c.patches) topos.push_back(build_patch_topology(p));
  for (auto& tj : c.junctions) {
    const index_t Z = tj.arity();
    bool done = false;
    for (index_t l = 0; l < Z && !done; ++l) {
      const Vec3 tau = junction_entry_tangent(c, topos, tj, l);
      if (c.dim == 3 && !(tau.norm() > 0.0)) continue;
      std::array<double, 3> sense{};
      bool ok = true;
      for (int j = 0; j < 3; ++j) {
        sense[j] = junction_leg_sense(c, topos, tj, l, j, tau);
        if (sense[j] == 0.0) ok = false;
      }
      if (!ok) continue;
      tj.orientation[0] = 1;
      for (int j = 1; j < 3; ++j) tj.orientation[j] = sense[0] * sense[j] > 0.0 ? 1 : -1;
      done = true;
    }
    if (!done) throw std::runtime_error("could not orient junction geometrically");
  }
}

}  // namespace sdcluster::detail
