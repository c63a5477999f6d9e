#include "sdcluster/scenarios.hpp"

#include "meshgen.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sdcluster {

using detail::allocate_segments;
using detail::arc_through;
using detail::auto_orient_junctions;
using detail::bridge_rings;
using detail::circle_ring;
using detail::make_junction;
using detail::orient_patch;
using detail::polyline_patch;
using detail::ring_patch;
using detail::RingMesh;
using detail::sample_curve;
using detail::square_ring;

namespace {

constexpr double kPi = std::numbers::pi;

double curve_length(const std::function<Vec3(double)>& f, double t0, double t1) {
  double len = 0.0;
  Vec3 prev = f(t0);
  const int n = 512;
  for (int k = 1; k <= n; ++k) {
    const Vec3 q = f(t0 + (t1 - t0) * k / n);
    len += (q - prev).norm();
    prev = q;
  }
  return len;
}

std::vector<int> unit_orientation(index_t num_patches) {
  return std::vector<int>(num_patches, 1);
}

Vec3 dir2(double angle) { return Vec3(std::cos(angle), std::sin(angle), 0.0); }

}  // namespace

Cluster make_double_bubble_2d(index_t K) {
  if (K < 12) K = 12;
  const Vec3 jp(0.0, 1.0, 0.0);
  const Vec3 jm(0.0, -1.0, 0.0);
  auto left = [](double t) { return Vec3(-2.0 * std::sin(t), std::cos(t), 0.0); };
  auto right = [](double t) { return Vec3(2.0 * std::sin(t), -std::cos(t), 0.0); };
  auto chord = [&](double t) { return Vec3(0.0, -1.0 + 2.0 * t, 0.0); };
  const std::vector<double> lengths = {curve_length(left, 0.0, kPi),
                                       curve_length(right, 0.0, kPi), 2.0};
  const auto seg = allocate_segments(lengths, K - 3, 2);

  Cluster c;
  c.dim = 2;
  c.patches.push_back(polyline_patch(0, sample_curve(left, 0.0, kPi, seg[0], jp, jm), false));
  c.patches.push_back(polyline_patch(1, sample_curve(right, 0.0, kPi, seg[1], jm, jp), false));
  c.patches.push_back(polyline_patch(2, sample_curve(chord, 0.0, 1.0, seg[2], jm, jp), false));

  c.junctions.push_back(make_junction(
      0, {{{0, 1, {0}}, {1, 2, {seg[1]}}, {2, 2, {seg[2]}}}}));  // at (0, 1)
  c.junctions.push_back(make_junction(
      1, {{{0, 2, {seg[0]}}, {1, 1, {0}}, {2, 1, {0}}}}));  // at (0, -1)
  auto_orient_junctions(c);

  Region leftr;
  leftr.region_id = 0;
  leftr.surface_set = {0, 2};
  leftr.orientation = unit_orientation(3);
  Region rightr;
  rightr.region_id = 1;
  rightr.surface_set = {1, 2};
  rightr.orientation = unit_orientation(3);
  rightr.orientation[2] = -1;
  c.regions = {leftr, rightr};
  return c;
}

namespace {

Cluster make_mercedes_bubble_2d(index_t K) {
  const double radius = 1.0;
  const double bulge = 1.42;
  std::array<Vec3, 3> tips;
  for (int i = 0; i < 3; ++i) tips[i] = radius * dir2(kPi / 2.0 + 2.0 * kPi * i / 3.0);
  const Vec3 origin = Vec3::Zero();

  std::vector<std::function<Vec3(double)>> curves;
  std::vector<double> lengths;
  for (int i = 0; i < 3; ++i) {  // interfaces 0..2
    const Vec3 tip = tips[i];
    curves.push_back([tip](double t) { return Vec3(t * tip); });
    lengths.push_back(radius);
  }
  std::vector<std::vector<Vec3>> arcs(3);
  std::vector<double> arc_len(3);

  Cluster c;
  c.dim = 2;
  const auto seg = [&] {
    std::vector<double> w = lengths;
    for (int i = 0; i < 3; ++i) {
      const Vec3 mid =
          bulge * radius * dir2(kPi / 2.0 + 2.0 * kPi * i / 3.0 + kPi / 3.0);
      const auto probe = arc_through(tips[i], mid, tips[(i + 1) % 3], 64);
      double len = 0.0;
      for (size_t k = 1; k < probe.size(); ++k) len += (probe[k] - probe[k - 1]).norm();
      w.push_back(len);
      arc_len[i] = len;
    }
    return allocate_segments(w, K - 6, 2);
  }();

  for (int i = 0; i < 3; ++i)
    c.patches.push_back(
        polyline_patch(i, sample_curve(curves[i], 0.0, 1.0, seg[i], origin, tips[i]), false));
  for (int i = 0; i < 3; ++i) {
    const Vec3 mid = bulge * radius * dir2(kPi / 2.0 + 2.0 * kPi * i / 3.0 + kPi / 3.0);
    auto pts = arc_through(tips[i], mid, tips[(i + 1) % 3], seg[3 + i]);
    c.patches.push_back(polyline_patch(3 + i, pts, false));
  }

  c.junctions.push_back(make_junction(0, {{{0, 1, {0}}, {1, 1, {0}}, {2, 1, {0}}}}));
  for (int i = 0; i < 3; ++i) {
    const index_t prev_arc = 3 + (i + 2) % 3;
    c.junctions.push_back(make_junction(
        1 + i,
        {{{i, 2, {seg[i]}}, {prev_arc, 2, {seg[prev_arc]}}, {3 + i, 1, {0}}}}));
  }
  auto_orient_junctions(c);

  for (int i = 0; i < 3; ++i) {
    Region r;
    r.region_id = i;
    r.surface_set = {static_cast<index_t>(i), static_cast<index_t>((i + 1) % 3),
                     static_cast<index_t>(3 + i)};
    r.orientation = unit_orientation(6);
    r.orientation[(i + 1) % 3] = -1;
    c.regions.push_back(r);
  }
  return c;
}

Cluster make_flower_bubble_2d(int n_bubbles, index_t K) {
  const int m = n_bubbles - 1;  // petals around one center bubble
  auto frac = [](double x) { return std::fmod(x, 1.0); };
  // uneven petal widths, radii and wavy arcs: the configuration starts well
  // away from equilibrium, as in the published multi-bubble runs
  std::vector<double> width(m);
  double wsum = 0.0;
  for (int i = 0; i < m; ++i) {
    width[i] = 0.45 + 1.55 * frac(0.618033988749895 * (i + 1));
    wsum += width[i];
  }
  std::vector<double> spoke_angle(m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    spoke_angle[i] = 2.0 * kPi * acc / wsum;
    acc += width[i];
  }
  std::vector<double> rc(m), ro(m);
  for (int i = 0; i < m; ++i) {
    rc[i] = 0.50 + 0.55 * frac(0.618033988749895 * (i + 5));
    ro[i] = 1.70 + 0.80 * frac(0.618033988749895 * (i + 3));
  }

  std::vector<Vec3> inner(m), outer(m);
  for (int i = 0; i < m; ++i) {
    inner[i] = rc[i] * dir2(spoke_angle[i]);
    outer[i] = ro[i] * dir2(spoke_angle[i]);
  }
  // wavy radius profile vanishing at the endpoints, so junctions stay exact
  auto wavy = [&](double r0, double r1, double hump, double wobble, double omega, double phase,
                  double a0, double a1) {
    return [=](double th) {
      const double s = (th - a0) / (a1 - a0);
      const double r = r0 + (r1 - r0) * s + hump * std::sin(kPi * s) +
                       wobble * std::sin(kPi * s) * std::sin(omega * th + phase);
      return Vec3(r * std::cos(th), r * std::sin(th), 0.0);
    };
  };

  std::vector<double> weights;
  for (int i = 0; i < m; ++i) {
    double span = spoke_angle[(i + 1) % m] - spoke_angle[i];
    if (span <= 0.0) span += 2.0 * kPi;
    weights.push_back(0.5 * (rc[i] + rc[(i + 1) % m]) * span);  // inner arcs
  }
  for (int i = 0; i < m; ++i) weights.push_back(ro[i] - rc[i]);  // spokes
  auto span_of = [&](int i) {
    const double a0 = spoke_angle[i];
    double a1 = spoke_angle[(i + 1) % m];
    if (a1 <= a0) a1 += 2.0 * kPi;
    return std::pair<double, double>(a0, a1);
  };
  auto inner_curve = [&](int i) {
    const auto [a0, a1] = span_of(i);
    return wavy(rc[i], rc[(i + 1) % m], 0.0, 0.30, 5.0, 0.7 * i, a0, a1);
  };
  auto outer_curve = [&](int i) {
    const auto [a0, a1] = span_of(i);
    const double hump = 0.55 + 0.85 * frac(0.618033988749895 * (i + 1));
    return wavy(ro[i], ro[(i + 1) % m], hump, 0.50, 6.0, 1.3 * i, a0, a1);
  };
  for (int i = 0; i < m; ++i) {
    const auto [a0, a1] = span_of(i);
    weights.push_back(curve_length(outer_curve(i), a0, a1));
  }
  const auto seg = allocate_segments(weights, K - 3 * m, 2);

  Cluster c;
  c.dim = 2;
  for (int i = 0; i < m; ++i) {  // inner arcs, ids 0..m-1
    const auto [t0, t1] = span_of(i);
    c.patches.push_back(polyline_patch(
        i, sample_curve(inner_curve(i), t0, t1, seg[i], inner[i], inner[(i + 1) % m]), false));
  }
  for (int i = 0; i < m; ++i) {  // spokes, ids m..2m-1
    const Vec3 a = inner[i];
    const Vec3 b = outer[i];
    auto f = [a, b](double t) { return Vec3(a + t * (b - a)); };
    c.patches.push_back(polyline_patch(m + i, sample_curve(f, 0.0, 1.0, seg[m + i], a, b), false));
  }
  for (int i = 0; i < m; ++i) {  // outer arcs, ids 2m..3m-1
    const auto [t0, t1] = span_of(i);
    c.patches.push_back(polyline_patch(
        2 * m + i,
        sample_curve(outer_curve(i), t0, t1, seg[2 * m + i], outer[i], outer[(i + 1) % m]),
        false));
  }

  for (int i = 0; i < m; ++i) {  // inner junctions
    const index_t prev_arc = (i + m - 1) % m;
    c.junctions.push_back(make_junction(
        i, {{{prev_arc, 2, {seg[prev_arc]}}, {static_cast<index_t>(i), 1, {0}},
             {static_cast<index_t>(m + i), 1, {0}}}}));
  }
  for (int i = 0; i < m; ++i) {  // outer junctions
    const index_t prev_arc = 2 * m + (i + m - 1) % m;
    c.junctions.push_back(make_junction(
        m + i, {{{static_cast<index_t>(m + i), 2, {seg[m + i]}},
                 {prev_arc, 2, {seg[prev_arc]}},
                 {static_cast<index_t>(2 * m + i), 1, {0}}}}));
  }
  auto_orient_junctions(c);

  Region center;
  center.region_id = 0;
  for (int i = 0; i < m; ++i) center.surface_set.push_back(i);
  center.orientation = unit_orientation(3 * m);
  c.regions.push_back(center);
  for (int i = 0; i < m; ++i) {
    Region petal;
    petal.region_id = 1 + i;
    petal.surface_set = {static_cast<index_t>(i), static_cast<index_t>(m + i),
                         static_cast<index_t>(m + (i + 1) % m),
                         static_cast<index_t>(2 * m + i)};
    petal.orientation = unit_orientation(3 * m);
    petal.orientation[i] = -1;            // inner arc: outer normal points inward
    petal.orientation[m + (i + 1) % m] = -1;  // ccw spoke
    c.regions.push_back(petal);
  }
  return c;
}

}  // namespace

Cluster make_standard_bubble_2d(int n_bubbles, index_t K) {
  if (n_bubbles < 2 || n_bubbles > 7)
    throw std::invalid_argument("standard bubbles support 2..7 enclosed regions");
  if (K < 12 * n_bubbles) K = 12 * n_bubbles;
  if (n_bubbles == 2) return make_double_bubble_2d(K);
  if (n_bubbles == 3) return make_mercedes_bubble_2d(K);
  return make_flower_bubble_2d(n_bubbles, K);
}

Cluster make_regular_polygon_2d(index_t N, double radius) {
  if (N < 3) throw std::invalid_argument("polygon needs N >= 3");
  std::vector<Vec3> pts(N);
  for (index_t k = 0; k < N; ++k) pts[k] = radius * dir2(2.0 * kPi * k / N);
  Cluster c;
  c.dim = 2;
  c.patches.push_back(polyline_patch(0, pts, true));
  Region r;
  r.region_id = 0;
  r.surface_set = {0};
  r.orientation = {1};
  c.regions.push_back(r);
  return c;
}

Cluster make_tetrahedron_cluster() {
  Cluster c;
  c.dim = 3;
  SurfacePatch p;
  p.surface_id = 0;
  p.dim = 3;
  p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3.0) / 2.0, 0),
                Vec3(0.5, std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0))};
  p.simplices = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
  c.patches.push_back(p);
  Vec3 centroid = Vec3::Zero();
  for (const auto& q : p.vertices) centroid += q / 4.0;
  orient_patch(c.patches[0], [centroid](const Vec3& x) { return Vec3(x - centroid); });
  Region r;
  r.region_id = 0;
  r.surface_set = {0};
  r.orientation = {1};
  r.reference_point = centroid;
  c.regions.push_back(r);
  return c;
}

Cluster make_octahedron_cluster() {
  Cluster c;
  c.dim = 3;
  SurfacePatch p;
  p.surface_id = 0;
  p.dim = 3;
  const double s = 1.0 / std::sqrt(2.0);  // unit edges
  p.vertices = {Vec3(s, 0, 0), Vec3(-s, 0, 0), Vec3(0, s, 0),
                Vec3(0, -s, 0), Vec3(0, 0, s), Vec3(0, 0, -s)};
  p.simplices = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                 {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  c.patches.push_back(p);
  orient_patch(c.patches[0], [](const Vec3& x) { return x; });
  Region r;
  r.region_id = 0;
  r.surface_set = {0};
  r.orientation = {1};
  c.regions.push_back(r);
  return c;
}

namespace {

// Hemisphere rings from the pole down to the equator chain (exact points).
std::vector<std::vector<Vec3>> hemisphere_rings(const std::vector<Vec3>& equator, int m,
                                                double pole_z) {
  const index_t Z = static_cast<index_t>(equator.size());
  std::vector<std::vector<Vec3>> rings;
  rings.push_back({Vec3(0.0, 0.0, pole_z)});
  for (int j = 1; j < m; ++j) {
    const double phi = 0.5 * kPi * j / m;
    const index_t n = std::max<index_t>(6, static_cast<index_t>(std::lround(Z * std::sin(phi))));
    rings.push_back(circle_ring(std::sin(phi), (pole_z > 0 ? 1.0 : -1.0) * std::cos(phi), n));
  }
  rings.push_back(equator);
  return rings;
}

index_t hemisphere_count(index_t Z, int m) {
  index_t total = 1 + Z;
  for (int j = 1; j < m; ++j) {
    const double phi = 0.5 * kPi * j / m;
    total += std::max<index_t>(6, static_cast<index_t>(std::lround(Z * std::sin(phi))));
  }
  return total;
}

std::vector<std::vector<Vec3>> disk_rings(const std::vector<Vec3>& rim, int m) {
  const index_t Z = static_cast<index_t>(rim.size());
  std::vector<std::vector<Vec3>> rings;
  rings.push_back({Vec3::Zero()});
  for (int j = 1; j < m; ++j) {
    const double r = static_cast<double>(j) / m;
    const index_t n = std::max<index_t>(6, static_cast<index_t>(std::lround(Z * r)));
    rings.push_back(circle_ring(r, 0.0, n));
  }
  rings.push_back(rim);
  return rings;
}

index_t disk_count(index_t Z, int m) {
  index_t total = 1 + Z;
  for (int j = 1; j < m; ++j)
    total += std::max<index_t>(6,
                               static_cast<index_t>(std::lround(Z * static_cast<double>(j) / m)));
  return total;
}

}  // namespace

Cluster make_double_bubble_3d(index_t K) {
  if (K < 200) K = 200;
  // pick the equator count so that 2 caps + disk hit the target
  index_t best_z = 16;
  index_t best_err = std::numeric_limits<index_t>::max();
  for (index_t Z = 12; Z <= 600; Z += 2) {
    const int m = std::max(3, static_cast<int>(std::lround(Z / 4.0)));
    const int md = std::max(2, static_cast<int>(std::lround(Z / (2.0 * kPi))));
    const index_t total = 2 * hemisphere_count(Z, m) + disk_count(Z, md);
    const index_t err = std::abs(total - K);
    if (err < best_err) {
      best_err = err;
      best_z = Z;
    }
    if (total > 3 * K) break;
  }
  const index_t Z = best_z;
  const int m = std::max(3, static_cast<int>(std::lround(Z / 4.0)));
  const int md = std::max(2, static_cast<int>(std::lround(Z / (2.0 * kPi))));
  const std::vector<Vec3> equator = circle_ring(1.0, 0.0, Z);

  Cluster c;
  c.dim = 3;
  const RingMesh up = bridge_rings(hemisphere_rings(equator, m, 1.0), true);
  const RingMesh dn = bridge_rings(hemisphere_rings(equator, m, -1.0), true);
  const RingMesh disk = bridge_rings(disk_rings(equator, md), true);
  c.patches.push_back(ring_patch(0, up));
  c.patches.push_back(ring_patch(1, dn));
  c.patches.push_back(ring_patch(2, disk));
  orient_patch(c.patches[0], [](const Vec3& x) { return x; });
  orient_patch(c.patches[1], [](const Vec3& x) { return x; });
  orient_patch(c.patches[2], [](const Vec3&) { return Vec3(0, 0, 1); });

  std::vector<index_t> chain_up, chain_dn, chain_disk;
  for (index_t k = 0; k < Z; ++k) {
    chain_up.push_back(up.idx(m, k));
    chain_dn.push_back(dn.idx(m, k));
    chain_disk.push_back(disk.idx(md, k));
  }
  c.junctions.push_back(
      make_junction(0, {{{0, 1, chain_up}, {1, 1, chain_dn}, {2, 1, chain_disk}}}));
  auto_orient_junctions(c);

  Region top;
  top.region_id = 0;
  top.surface_set = {0, 2};
  top.orientation = {1, 1, -1};
  Region bottom;
  bottom.region_id = 1;
  bottom.surface_set = {1, 2};
  bottom.orientation = {1, 1, 1};
  c.regions = {top, bottom};
  return c;
}

namespace {

// Meridian chain at a fixed azimuth from the north to the south pole (or to
// the equator when half == true), with exact poles.
std::vector<Vec3> meridian_chain(double azimuth, int m, bool half) {
  std::vector<Vec3> pts;
  const double span = half ? 0.5 * kPi : kPi;
  for (int t = 0; t <= m; ++t) {
    const double phi = span * t / m;
    pts.push_back(Vec3(std::sin(phi) * std::cos(azimuth), std::sin(phi) * std::sin(azimuth),
                       std::cos(phi)));
  }
  pts.front() = Vec3(0, 0, 1);
  if (!half) pts.back() = Vec3(0, 0, -1);
  return pts;
}

// Lune rings between two meridians (endpoints exact); ring t spans the
// azimuth interval at polar angle phi_t. `spacing` is the polar step, used
// to size the azimuthal counts.
std::vector<std::vector<Vec3>> lune_rings(const std::vector<Vec3>& west,
                                          const std::vector<Vec3>& east, double az0, double az1,
                                          int m, bool half,
                                          const std::vector<Vec3>* equator_override) {
  std::vector<std::vector<Vec3>> rings;
  const double span = half ? 0.5 * kPi : kPi;
  const double spacing = span / m;
  for (int t = 0; t <= m; ++t) {
    const double phi = span * t / m;
    const double s = std::sin(phi);
    if (t == 0 || (!half && t == m)) {
      rings.push_back({west[t]});
      continue;
    }
    if (half && t == m && equator_override != nullptr) {
      rings.push_back(*equator_override);
      continue;
    }
    const index_t segs =
        std::max<index_t>(1, static_cast<index_t>(std::lround((az1 - az0) * s / spacing)));
    std::vector<Vec3> ring;
    ring.push_back(west[t]);
    for (index_t k = 1; k < segs; ++k) {
      const double az = az0 + (az1 - az0) * k / segs;
      ring.push_back(Vec3(s * std::cos(az), s * std::sin(az), std::cos(phi)));
    }
    ring.push_back(east[t]);
    rings.push_back(ring);
  }
  return rings;
}

// Half-disk rows from the axis to a meridian chain (both exact). `spacing`
// controls the horizontal segment counts.
std::vector<std::vector<Vec3>> halfdisk_rows(const std::vector<Vec3>& axis,
                                             const std::vector<Vec3>& rim, int m, double spacing,
                                             const std::vector<Vec3>* bottom_override) {
  std::vector<std::vector<Vec3>> rows;
  for (int t = 0; t <= m; ++t) {
    const Vec3 a = axis[t];
    const Vec3 b = rim[t];
    const double w = (b - a).norm();
    if (!(w > 1e-14)) {
      rows.push_back({a});
      continue;
    }
    if (t == m && bottom_override != nullptr) {
      rows.push_back(*bottom_override);
      continue;
    }
    const index_t segs = std::max<index_t>(1, static_cast<index_t>(std::lround(w / spacing)));
    std::vector<Vec3> row;
    row.push_back(a);
    for (index_t k = 1; k < segs; ++k) row.push_back(a + (b - a) * (static_cast<double>(k) / segs));
    row.push_back(b);
    rows.push_back(row);
  }
  return rows;
}

index_t rings_count(const std::vector<std::vector<Vec3>>& rings) {
  index_t n = 0;
  for (const auto& r : rings) n += static_cast<index_t>(r.size());
  return n;
}

}  // namespace

Cluster make_triple_bubble_3d(index_t K) {
  if (K < 300) K = 300;
  // resolution search on the meridian segment count
  int best_m = 8;
  index_t best_err = std::numeric_limits<index_t>::max();
  for (int m = 6; m <= 200; m += 2) {
    std::vector<Vec3> mer = meridian_chain(0.0, m, false);
    std::vector<Vec3> axis(m + 1);
    for (int t = 0; t <= m; ++t) axis[t] = Vec3(0, 0, mer[t].z());
    const auto lune = lune_rings(mer, mer, 0.0, 2.0 * kPi / 3.0, m, false, nullptr);
    const auto hd = halfdisk_rows(axis, mer, m, kPi / m, nullptr);
    const index_t total = 3 * (rings_count(lune) + rings_count(hd));
    if (std::abs(total - K) < best_err) {
      best_err = std::abs(total - K);
      best_m = m;
    }
    if (total > 3 * K) break;
  }
  const int m = best_m;

  std::array<std::vector<Vec3>, 3> meridians;
  for (int i = 0; i < 3; ++i) meridians[i] = meridian_chain(2.0 * kPi * i / 3.0, m, false);
  std::vector<Vec3> axis(m + 1);
  for (int t = 0; t <= m; ++t) axis[t] = Vec3(0, 0, meridians[0][t].z());

  Cluster c;
  c.dim = 3;
  std::array<RingMesh, 3> lunes;
  std::array<RingMesh, 3> hds;
  for (int i = 0; i < 3; ++i) {
    lunes[i] = bridge_rings(lune_rings(meridians[i], meridians[(i + 1) % 3],
                                       2.0 * kPi * i / 3.0, 2.0 * kPi * (i + 1) / 3.0, m, false,
                                       nullptr),
                            false);
    c.patches.push_back(ring_patch(i, lunes[i]));
    orient_patch(c.patches[i], [](const Vec3& x) { return x; });
  }
  for (int i = 0; i < 3; ++i) {
    hds[i] = bridge_rings(halfdisk_rows(axis, meridians[i], m, kPi / m, nullptr), false);
    c.patches.push_back(ring_patch(3 + i, hds[i]));
    const Vec3 field = dir2(2.0 * kPi * i / 3.0 + 0.5 * kPi);
    orient_patch(c.patches[3 + i], [field](const Vec3&) { return field; });
  }

  auto lune_side = [&](int i, bool east) {
    std::vector<index_t> chain;
    for (int t = 0; t <= m; ++t)
      chain.push_back(lunes[i].idx(t, east ? lunes[i].ring_count[t] - 1 : 0));
    return chain;
  };
  auto hd_side = [&](int i, bool outer) {
    std::vector<index_t> chain;
    for (int t = 0; t <= m; ++t)
      chain.push_back(hds[i].idx(t, outer ? hds[i].ring_count[t] - 1 : 0));
    return chain;
  };

  // axis junction: the three half-disk inner columns
  c.junctions.push_back(make_junction(
      0, {{{3, 1, hd_side(0, false)}, {4, 1, hd_side(1, false)}, {5, 1, hd_side(2, false)}}}));
  // meridian junctions
  for (int i = 0; i < 3; ++i) {
    const index_t west_lune = static_cast<index_t>(i);
    const index_t east_lune = static_cast<index_t>((i + 2) % 3);
    c.junctions.push_back(make_junction(
        1 + i, {{{east_lune, 2, lune_side((i + 2) % 3, true)},
                 {west_lune, 1, lune_side(i, false)},
                 {static_cast<index_t>(3 + i), 2, hd_side(i, true)}}}));
  }
  auto_orient_junctions(c);

  for (int i = 0; i < 3; ++i) {
    Region w;
    w.region_id = i;
    w.surface_set = {static_cast<index_t>(i), static_cast<index_t>(3 + i),
                     static_cast<index_t>(3 + (i + 1) % 3)};
    w.orientation = unit_orientation(6);
    w.orientation[3 + i] = -1;
    c.regions.push_back(w);
  }
  return c;
}

Cluster make_quadruple_bubble_3d(index_t K) {
  if (K < 400) K = 400;
  int best_m = 8;
  index_t best_err = std::numeric_limits<index_t>::max();
  auto predict = [&](int m) -> index_t {
    const index_t ze = std::max<index_t>(2, static_cast<index_t>(std::lround(2.0 * m / 3.0)));
    const index_t Z = 3 * ze;
    const int mr = std::max(2, static_cast<int>(std::lround(2.0 * m / kPi)));
    index_t hemi = Z;  // equator ring
    for (int u = 1; u < m; ++u) {
      const double phi = 0.5 * kPi + 0.5 * kPi * u / m;
      hemi += std::max<index_t>(6,
                                static_cast<index_t>(std::lround(Z * std::sin(phi))));
    }
    hemi += 1;  // south pole
    index_t sector = 1 + (ze + 1);  // center + outer arc
    for (int j = 1; j < mr; ++j) {
      const double r = static_cast<double>(j) / mr;
      sector += std::max<index_t>(1, static_cast<index_t>(std::lround(ze * r))) + 1;
    }
    index_t lune = 1 + (ze + 1);  // pole + equator arc
    for (int t = 1; t < m; ++t) {
      const double s = std::sin(0.5 * kPi * t / m);
      lune += std::max<index_t>(
                  1, static_cast<index_t>(std::lround((2.0 * kPi / 3.0) / (0.5 * kPi / m) * s))) +
              1;
    }
    index_t hd = 1 + (mr + 1);
    for (int t = 1; t < m; ++t) {
      const double w = std::sin(0.5 * kPi * t / m);
      hd += std::max<index_t>(1, static_cast<index_t>(std::lround(w * 2.0 * m / kPi))) + 1;
    }
    return hemi + 3 * (sector + lune + hd);
  };
  for (int m = 6; m <= 160; ++m) {
    const index_t err = std::abs(predict(m) - K);
    if (err < best_err) {
      best_err = err;
      best_m = m;
    }
    if (predict(m) > 3 * K) break;
  }
  const int m = best_m;
  const index_t ze = std::max<index_t>(2, static_cast<index_t>(std::lround(2.0 * m / 3.0)));
  const index_t Z = 3 * ze;
  const int mr = std::max(2, static_cast<int>(std::lround(2.0 * m / kPi)));

  const std::vector<Vec3> equator = circle_ring(1.0, 0.0, Z);
  std::array<std::vector<Vec3>, 3> meridians;
  std::array<std::vector<Vec3>, 3> radii;
  for (int i = 0; i < 3; ++i) {
    meridians[i] = meridian_chain(2.0 * kPi * i / 3.0, m, true);
    meridians[i].back() = equator[i * ze];  // exact equator point
    std::vector<Vec3> rad(mr + 1);
    for (int j = 0; j <= mr; ++j) rad[j] = equator[i * ze] * (static_cast<double>(j) / mr);
    rad[0] = Vec3::Zero();
    radii[i] = rad;
  }
  std::vector<Vec3> axis(m + 1);
  for (int t = 0; t <= m; ++t) axis[t] = Vec3(0, 0, meridians[0][t].z());
  axis[m] = Vec3::Zero();

  Cluster c;
  c.dim = 3;
  c.patches.resize(10);

  // 0: bottom hemisphere (equator ring first, then down to the south pole)
  {
    std::vector<std::vector<Vec3>> rings;
    rings.push_back(equator);
    for (int u = 1; u < m; ++u) {
      const double phi = 0.5 * kPi + 0.5 * kPi * u / m;
      const index_t n =
          std::max<index_t>(6, static_cast<index_t>(std::lround(Z * std::sin(phi))));
      rings.push_back(circle_ring(std::sin(phi), std::cos(phi), n));
    }
    rings.push_back({Vec3(0, 0, -1)});
    const RingMesh hemi = bridge_rings(rings, true);
    c.patches[0] = ring_patch(0, hemi);
    orient_patch(c.patches[0], [](const Vec3& x) { return x; });
    // boundary parts: equator arcs i -> chain entries k = i*ze .. (i+1)*ze
  }
  // 1..3: equator sectors
  std::array<RingMesh, 3> sectors;
  for (int i = 0; i < 3; ++i) {
    std::vector<std::vector<Vec3>> rings;
    rings.push_back({Vec3::Zero()});
    for (int j = 1; j < mr; ++j) {
      const double r = static_cast<double>(j) / mr;
      const index_t segs = std::max<index_t>(1, static_cast<index_t>(std::lround(ze * r)));
      std::vector<Vec3> ring;
      ring.push_back(radii[i][j]);
      for (index_t k = 1; k < segs; ++k) {
        const double az = 2.0 * kPi * i / 3.0 + (2.0 * kPi / 3.0) * k / segs;
        ring.push_back(r * dir2(az));
      }
      ring.push_back(radii[(i + 1) % 3][j]);
      rings.push_back(ring);
    }
    std::vector<Vec3> outer(equator.begin() + i * ze,
                            i == 2 ? equator.end() : equator.begin() + (i + 1) * ze + 1);
    if (i == 2) outer.push_back(equator[0]);
    rings.push_back(outer);
    sectors[i] = bridge_rings(rings, false);
    c.patches[1 + i] = ring_patch(1 + i, sectors[i]);
    orient_patch(c.patches[1 + i], [](const Vec3&) { return Vec3(0, 0, 1); });
  }
  // 4..6: top lunes
  std::array<RingMesh, 3> lunes;
  for (int i = 0; i < 3; ++i) {
    std::vector<Vec3> eq_arc(equator.begin() + i * ze,
                             i == 2 ? equator.end() : equator.begin() + (i + 1) * ze + 1);
    if (i == 2) eq_arc.push_back(equator[0]);
    lunes[i] = bridge_rings(lune_rings(meridians[i], meridians[(i + 1) % 3],
                                       2.0 * kPi * i / 3.0, 2.0 * kPi * (i + 1) / 3.0, m, true,
                                       &eq_arc),
                            false);
    c.patches[4 + i] = ring_patch(4 + i, lunes[i]);
    orient_patch(c.patches[4 + i], [](const Vec3& x) { return x; });
  }
  // 7..9: top half-disks
  std::array<RingMesh, 3> hds;
  for (int i = 0; i < 3; ++i) {
    hds[i] = bridge_rings(halfdisk_rows(axis, meridians[i], m, 0.5 * kPi / m, &radii[i]), false);
    c.patches[7 + i] = ring_patch(7 + i, hds[i]);
    const Vec3 field = dir2(2.0 * kPi * i / 3.0 + 0.5 * kPi);
    orient_patch(c.patches[7 + i], [field](const Vec3&) { return field; });
  }

  auto ring_side = [&](const RingMesh& rm, int rows, bool last) {
    std::vector<index_t> chain;
    for (int t = 0; t <= rows; ++t) chain.push_back(rm.idx(t, last ? rm.ring_count[t] - 1 : 0));
    return chain;
  };
  auto full_ring = [&](const RingMesh& rm, int ring) {
    std::vector<index_t> chain;
    for (index_t k = 0; k < rm.ring_count[ring]; ++k) chain.push_back(rm.idx(ring, k));
    return chain;
  };

  // hemisphere equator arc chains (ring 0, wrapping)
  auto hemi_arc = [&](int i) {
    std::vector<index_t> chain;
    for (index_t k = i * ze; k <= (i + 1) * ze; ++k) chain.push_back(k % Z);
    return chain;
  };

  // axis junction
  c.junctions.push_back(make_junction(0, {{{7, 1, ring_side(hds[0], m, false)},
                                           {8, 1, ring_side(hds[1], m, false)},
                                           {9, 1, ring_side(hds[2], m, false)}}}));
  // meridian junctions
  for (int i = 0; i < 3; ++i) {
    c.junctions.push_back(
        make_junction(1 + i, {{{static_cast<index_t>(4 + (i + 2) % 3), 2,
                                ring_side(lunes[(i + 2) % 3], m, true)},
                               {static_cast<index_t>(4 + i), 1, ring_side(lunes[i], m, false)},
                               {static_cast<index_t>(7 + i), 2, ring_side(hds[i], m, true)}}}));
  }
  // equator arc junctions
  for (int i = 0; i < 3; ++i) {
    c.junctions.push_back(make_junction(
        4 + i, {{{0, static_cast<index_t>(1 + i), hemi_arc(i)},
                 {static_cast<index_t>(1 + i), 3, full_ring(sectors[i], mr)},
                 {static_cast<index_t>(4 + i), 3, full_ring(lunes[i], m)}}}));
  }
  // radius junctions
  for (int i = 0; i < 3; ++i) {
    c.junctions.push_back(make_junction(
        7 + i, {{{static_cast<index_t>(1 + (i + 2) % 3), 2, ring_side(sectors[(i + 2) % 3], mr, true)},
                 {static_cast<index_t>(1 + i), 1, ring_side(sectors[i], mr, false)},
                 {static_cast<index_t>(7 + i), 3, full_ring(hds[i], m)}}}));
  }
  auto_orient_junctions(c);

  Region bottom;
  bottom.region_id = 0;
  bottom.surface_set = {0, 1, 2, 3};
  bottom.orientation = unit_orientation(10);
  bottom.reference_point = Vec3(0, 0, -0.25);
  c.regions.push_back(bottom);
  for (int i = 0; i < 3; ++i) {
    Region w;
    w.region_id = 1 + i;
    w.surface_set = {static_cast<index_t>(1 + i), static_cast<index_t>(4 + i),
                     static_cast<index_t>(7 + i), static_cast<index_t>(7 + (i + 1) % 3)};
    w.orientation = unit_orientation(10);
    w.orientation[1 + i] = -1;
    w.orientation[7 + i] = -1;
    w.reference_point = Vec3(0, 0, 0.25);
    c.regions.push_back(w);
  }
  return c;
}

Cluster make_drop_on_substrate(int dim, index_t K, double rho) {
  Cluster c;
  c.dim = dim;
  if (dim == 2) {
    if (K < 8) K = 8;
    auto f = [](double t) { return Vec3(std::cos(t), std::sin(t), 0.0); };
    auto pts = sample_curve(f, 0.0, kPi, K - 1, Vec3(1, 0, 0), Vec3(-1, 0, 0));
    c.patches.push_back(polyline_patch(0, pts, false));
    for (int e = 0; e < 2; ++e) {
      BoundaryLine bl;
      bl.bl_id = e;
      bl.incident = {0, e + 1};
      bl.plane_point = Vec3::Zero();
      bl.plane_normal = Vec3(0, 1, 0);
      bl.contact_param = rho;
      bl.chain = {e == 0 ? 0 : K - 1};
      c.boundaries.push_back(bl);
    }
    Region r;
    r.region_id = 0;
    r.surface_set = {0};
    r.orientation = {1};
    r.plane_set = {0, 1};
    c.regions.push_back(r);
    return c;
  }
  if (K < 100) K = 100;
  index_t best_z = 16;
  index_t best_err = std::numeric_limits<index_t>::max();
  for (index_t Z = 12; Z <= 800; Z += 2) {
    const int m = std::max(3, static_cast<int>(std::lround(Z / 4.0)));
    const index_t err = std::abs(hemisphere_count(Z, m) - K);
    if (err < best_err) {
      best_err = err;
      best_z = Z;
    }
    if (hemisphere_count(Z, m) > 3 * K) break;
  }
  const index_t Z = best_z;
  const int m = std::max(3, static_cast<int>(std::lround(Z / 4.0)));
  const std::vector<Vec3> equator = circle_ring(1.0, 0.0, Z);
  const RingMesh cap = bridge_rings(hemisphere_rings(equator, m, 1.0), true);
  c.patches.push_back(ring_patch(0, cap));
  orient_patch(c.patches[0], [](const Vec3& x) { return x; });

  BoundaryLine bl;
  bl.bl_id = 0;
  bl.incident = {0, 1};
  bl.plane_point = Vec3::Zero();
  bl.plane_normal = Vec3(0, 0, 1);
  bl.contact_param = rho;
  // ordered along mu x nu: clockwise seen from +z
  bl.chain.push_back(cap.idx(m, 0));
  for (index_t k = Z - 1; k >= 1; --k) bl.chain.push_back(cap.idx(m, k));
  bl.chain.push_back(cap.idx(m, 0));
  c.boundaries.push_back(bl);

  Region r;
  r.region_id = 0;
  r.surface_set = {0};
  r.orientation = {1};
  r.plane_set = {0};
  r.reference_point = Vec3::Zero();
  c.regions.push_back(r);
  return c;
}

namespace {

// Shrinking-square ring stack for a flat plate at height z, from half-width
// w_outer (n_t per side) down to a center point.
std::vector<std::vector<Vec3>> plate_rings(double w_outer, double z, index_t n_t) {
  std::vector<std::vector<Vec3>> rings;
  for (index_t s = n_t; s >= 1; --s) {
    const double w = w_outer * s / n_t;
    rings.push_back(square_ring(w, z, s));
  }
  rings.push_back({Vec3(0, 0, z)});
  return rings;
}

void add_wall_chains(Cluster& c, index_t patch_id, const RingMesh& rm, index_t outer_ring,
                     index_t n_t, double w, index_t first_part, double rho) {
  // Walls x=+w, y=+w, x=-w, y=-w with inward normals, chains ordered along
  // mu x nu for a sheet with normal +z.
  struct Wall {
    Vec3 n;
    std::vector<index_t> positions;
  };
  const index_t N = 4 * n_t;
  std::vector<Wall> walls(4);
  walls[0].n = Vec3(-1, 0, 0);
  for (index_t p = n_t + 1; p-- > 0;) walls[0].positions.push_back(p);  // (w,w) -> (w,-w)
  walls[1].n = Vec3(0, -1, 0);
  for (index_t p = 2 * n_t + 1; p-- > n_t;) walls[1].positions.push_back(p);  // (-w,w)->(w,w)
  walls[2].n = Vec3(1, 0, 0);
  for (index_t p = 3 * n_t + 1; p-- > 2 * n_t;) walls[2].positions.push_back(p);
  walls[3].n = Vec3(0, 1, 0);
  {
    walls[3].positions.push_back(0);  // corner (w,-w) == position 0
    for (index_t p = 4 * n_t; p-- > 3 * n_t;) walls[3].positions.push_back(p);
  }
  for (int wall = 0; wall < 4; ++wall) {
    BoundaryLine bl;
    bl.bl_id = static_cast<index_t>(c.boundaries.size());
    bl.incident = {patch_id, static_cast<index_t>(first_part + wall)};
    bl.plane_normal = walls[wall].n;
    bl.plane_point = -w * walls[wall].n;
    bl.contact_param = rho;
    for (index_t p : walls[wall].positions) bl.chain.push_back(rm.idx(outer_ring, p % N));
    c.boundaries.push_back(bl);
  }
}

}  // namespace

Cluster make_flat_plate(index_t K) {
  if (K < 64) K = 64;
  const double w = 1.5;
  index_t best_n = 4;
  index_t best_err = std::numeric_limits<index_t>::max();
  for (index_t n = 4; n <= 120; ++n) {
    index_t total = 1;
    for (index_t s = 1; s <= n; ++s) total += 4 * s;
    const index_t err = std::abs(total - K);
    if (err < best_err) {
      best_err = err;
      best_n = n;
    }
    if (total > 3 * K) break;
  }
  const index_t n_t = best_n;
  Cluster c;
  c.dim = 3;
  const RingMesh sheet = bridge_rings(plate_rings(w, 0.0, n_t), true);
  c.patches.push_back(ring_patch(0, sheet));
  orient_patch(c.patches[0], [](const Vec3&) { return Vec3(0, 0, 1); });
  add_wall_chains(c, 0, sheet, 0, n_t, w, 1, 0.0);
  return c;
}

Cluster make_cylinder_cluster(index_t K, double rho) {
  if (K < 400) K = 400;
  const double w = 1.5;
  const double a = 0.75;
  const double h = 0.75;
  // resolution: n_t per quarter of the inner loop
  index_t best_n = 6;
  index_t best_err = std::numeric_limits<index_t>::max();
  auto predict = [&](index_t n_t) -> index_t {
    const index_t n_h = std::max<index_t>(2, static_cast<index_t>(std::lround(n_t * h / (2 * a))));
    const index_t n_r = std::max<index_t>(2, static_cast<index_t>(std::lround(n_t * (w - a) / (2 * a))));
    index_t cap = 4 * n_t * (n_h + 1);  // tube rings
    for (index_t s = 1; s < n_t; ++s) cap += 4 * s;  // shrinking top
    cap += 1;
    const index_t green = 4 * n_t * (n_r + 1);
    return 2 * cap + green;
  };
  for (index_t n = 4; n <= 80; ++n) {
    const index_t err = std::abs(predict(n) - K);
    if (err < best_err) {
      best_err = err;
      best_n = n;
    }
    if (predict(n) > 3 * K) break;
  }
  const index_t n_t = best_n;
  const index_t n_h = std::max<index_t>(2, static_cast<index_t>(std::lround(n_t * h / (2 * a))));
  const index_t n_r = std::max<index_t>(2, static_cast<index_t>(std::lround(n_t * (w - a) / (2 * a))));

  auto cap_rings = [&](double zsign) {
    std::vector<std::vector<Vec3>> rings;
    for (index_t r = 0; r <= n_h; ++r)
      rings.push_back(square_ring(a, zsign * h * r / n_h, n_t));
    for (index_t s = n_t - 1; s >= 1; --s)
      rings.push_back(square_ring(a * s / n_t, zsign * h, s));
    rings.push_back({Vec3(0, 0, zsign * h)});
    return rings;
  };

  Cluster c;
  c.dim = 3;
  const RingMesh top = bridge_rings(cap_rings(1.0), true);
  const RingMesh bot = bridge_rings(cap_rings(-1.0), true);
  c.patches.push_back(ring_patch(0, top));
  c.patches.push_back(ring_patch(1, bot));
  orient_patch(c.patches[0], [](const Vec3& x) { return x + Vec3(0, 0, 0.05); });
  orient_patch(c.patches[1], [](const Vec3& x) { return x - Vec3(0, 0, 0.05); });

  std::vector<std::vector<Vec3>> green_rings;
  for (index_t g = 0; g <= n_r; ++g)
    green_rings.push_back(square_ring(a + (w - a) * g / n_r, 0.0, n_t));
  const RingMesh green = bridge_rings(green_rings, true);
  c.patches.push_back(ring_patch(2, green));
  orient_patch(c.patches[2], [](const Vec3&) { return Vec3(0, 0, 1); });

  std::vector<index_t> loop_top, loop_bot, loop_green;
  for (index_t k = 0; k < 4 * n_t; ++k) {
    loop_top.push_back(top.idx(0, k));
    loop_bot.push_back(bot.idx(0, k));
    loop_green.push_back(green.idx(0, k));
  }
  c.junctions.push_back(
      make_junction(0, {{{0, 1, loop_top}, {1, 1, loop_bot}, {2, 1, loop_green}}}));
  auto_orient_junctions(c);

  add_wall_chains(c, 2, green, n_r, n_t, w, 2, rho);

  Region bubble;
  bubble.region_id = 0;
  bubble.surface_set = {0, 1};
  bubble.orientation = {1, 1, 1};
  c.regions.push_back(bubble);
  return c;
}

Cluster make_sphere_cluster(index_t K) {
  if (K < 30) K = 30;
  index_t best_z = 12;
  index_t best_err = std::numeric_limits<index_t>::max();
  auto predict = [&](index_t Z) {
    const int m = std::max(4, static_cast<int>(std::lround(Z / 2.0)));
    index_t total = 2;
    for (int j = 1; j < m; ++j)
      total += std::max<index_t>(
          6, static_cast<index_t>(std::lround(Z * std::sin(kPi * j / m))));
    return total;
  };
  for (index_t Z = 8; Z <= 600; Z += 2) {
    const index_t err = std::abs(predict(Z) - K);
    if (err < best_err) {
      best_err = err;
      best_z = Z;
    }
    if (predict(Z) > 3 * K) break;
  }
  const index_t Z = best_z;
  const int m = std::max(4, static_cast<int>(std::lround(Z / 2.0)));
  std::vector<std::vector<Vec3>> rings;
  rings.push_back({Vec3(0, 0, 1)});
  for (int j = 1; j < m; ++j) {
    const double phi = kPi * j / m;
    const index_t n =
        std::max<index_t>(6, static_cast<index_t>(std::lround(Z * std::sin(phi))));
    rings.push_back(circle_ring(std::sin(phi), std::cos(phi), n));
  }
  rings.push_back({Vec3(0, 0, -1)});
  Cluster c;
  c.dim = 3;
  c.patches.push_back(ring_patch(0, bridge_rings(rings, true)));
  orient_patch(c.patches[0], [](const Vec3& x) { return x; });
  Region r;
  r.region_id = 0;
  r.surface_set = {0};
  r.orientation = {1};
  c.regions.push_back(r);
  return c;
}

std::vector<ScenarioInfo> scenario_registry() {
  return {
      {"double_bubble_2d", "K (default 129)",
       "two 2:1 semi-ellipses and a chord meeting at two triple junctions"},
      {"standard_bubble_2d", "n_bubbles in [2,7], K (default 1025)",
       "standard planar n-bubble configurations"},
      {"double_bubble_3d", "K (default 3267)", "two halfspheres and a disk"},
      {"triple_bubble_3d", "K (default 6534)", "three wedges of a ball"},
      {"quadruple_bubble_3d", "K (default 8378)", "half-ball plus three wedges"},
      {"drop_on_substrate", "dim in {2,3}, K (default 4225), rho",
       "semicircle/hemisphere attached to the substrate plane"},
      {"cylinder_cluster", "K (default 4802), rho",
       "bubble between two caps and a wall-attached sheet in a square cylinder"},
      {"flat_plate", "K (default 1000)", "flat sheet attached to four walls"},
      {"polygon_2d", "K = vertex count (default 64)", "regular polygon (closed curve)"},
      {"sphere_3d", "K (default 600)", "closed sphere mesh"},
      {"tetrahedron", "", "closed unit-edge tetrahedron surface"},
      {"octahedron", "", "closed unit-edge octahedron surface"},
  };
}

Cluster make_scenario(const ScenarioSpec& spec) {
  const auto K = [&](index_t fallback) { return spec.K > 0 ? spec.K : fallback; };
  if (spec.name == "double_bubble_2d") return make_double_bubble_2d(K(129));
  if (spec.name == "standard_bubble_2d") return make_standard_bubble_2d(spec.n_bubbles, K(1025));
  if (spec.name == "double_bubble_3d") return make_double_bubble_3d(K(3267));
  if (spec.name == "triple_bubble_3d") return make_triple_bubble_3d(K(6534));
  if (spec.name == "quadruple_bubble_3d") return make_quadruple_bubble_3d(K(8378));
  if (spec.name == "drop_on_substrate")
    return make_drop_on_substrate(spec.dim, K(spec.dim == 2 ? 129 : 4225), spec.rho);
  if (spec.name == "cylinder_cluster") return make_cylinder_cluster(K(4802), spec.rho);
  if (spec.name == "flat_plate") return make_flat_plate(K(1000));
  if (spec.name == "polygon_2d") return make_regular_polygon_2d(K(64));
  if (spec.name == "sphere_3d") return make_sphere_cluster(K(600));
  if (spec.name == "tetrahedron") return make_tetrahedron_cluster();
  if (spec.name == "octahedron") return make_octahedron_cluster();
  throw std::invalid_argument("unknown scenario: " + spec.name);
}

}  // namespace sdcluster
