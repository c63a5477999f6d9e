#include "sdcluster/dof_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sdcluster {

namespace {

struct UnionFind {
  std::vector<index_t> parent;
  explicit UnionFind(index_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  index_t find(index_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(index_t a, index_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);  // keep the smaller id as root
    parent[a] = b;
  }
};

// Householder frame: tangent columns orthogonal to n, deterministic.
std::array<Vec3, 2> householder_tangents(const Vec3& n, int dim) {
  if (dim == 2) return {rot_plus90(n).normalized(), Vec3::Zero()};
  Vec3 v = n;
  v.x() += (n.x() >= 0.0 ? 1.0 : -1.0) * n.norm();
  const double v2 = v.squaredNorm();
  auto reflect = [&](const Vec3& e) { return Vec3(e - (2.0 * v.dot(e) / v2) * v); };
  return {reflect(Vec3::UnitY()).normalized(), reflect(Vec3::UnitZ()).normalized()};
}

}  // namespace

Positions DofMap::expand_x(const Cluster& c, const Eigen::VectorXd& x) const {
  Positions delta(c.patches.size());
  for (index_t i = 0; i < c.num_patches(); ++i) {
    delta[i].assign(c.patches[i].vertices.size(), Vec3::Zero());
    for (index_t k = 0; k < c.patches[i].num_vertices(); ++k) {
      const ClassFrame& fr = frames[node_class[flat_node(i, k)]];
      Vec3 d = Vec3::Zero();
      for (int t = 0; t < fr.num_free; ++t) d += x[fr.x_offset + t] * fr.columns[t];
      delta[i][k] = d;
    }
  }
  return delta;
}

std::vector<std::vector<double>> DofMap::expand_kappa(const Cluster& c,
                                                      const Eigen::VectorXd& kv) const {
  std::vector<std::vector<double>> nodal(c.patches.size());
  for (index_t i = 0; i < c.num_patches(); ++i) {
    nodal[i].assign(c.patches[i].vertices.size(), 0.0);
    for (index_t k = 0; k < c.patches[i].num_vertices(); ++k) {
      double v = 0.0;
      for (const auto& [dof, coeff] : kappa_expansion[flat_node(i, k)].terms)
        v += coeff * kv[dof];
      nodal[i][k] = v;
    }
  }
  return nodal;
}

DofMap build_dof_maps(const Cluster& c) {
  DofMap dm;
  dm.dim = c.dim;
  dm.patch_offset.resize(c.patches.size() + 1, 0);
  for (size_t i = 0; i < c.patches.size(); ++i)
    dm.patch_offset[i + 1] = dm.patch_offset[i] + c.patches[i].num_vertices();
  dm.num_nodes = dm.patch_offset.back();

  // Junction identification (transitive across junctions).
  UnionFind uf(dm.num_nodes);
  for (const auto& tj : c.junctions) {
    const index_t Z = tj.arity();
    for (index_t l = 0; l < Z; ++l) {
      const index_t n0 = dm.flat_node(tj.incident[0].first, tj.correspondence[0][l]);
      const index_t n1 = dm.flat_node(tj.incident[1].first, tj.correspondence[1][l]);
      const index_t n2 = dm.flat_node(tj.incident[2].first, tj.correspondence[2][l]);
      uf.unite(n0, n1);
      uf.unite(n0, n2);
    }
  }

  // Classes ordered by their smallest member (the union-find root).
  dm.node_class.assign(dm.num_nodes, -1);
  std::vector<index_t> roots;
  for (index_t n = 0; n < dm.num_nodes; ++n)
    if (uf.find(n) == n) roots.push_back(n);
  dm.num_classes = static_cast<index_t>(roots.size());
  dm.class_representative = roots;
  std::map<index_t, index_t> root_to_class;
  for (index_t cidx = 0; cidx < dm.num_classes; ++cidx) root_to_class[roots[cidx]] = cidx;
  for (index_t n = 0; n < dm.num_nodes; ++n) dm.node_class[n] = root_to_class[uf.find(n)];

  std::vector<index_t> class_size(dm.num_classes, 0);
  for (index_t n = 0; n < dm.num_nodes; ++n) ++class_size[dm.node_class[n]];

  // Plane constraints per class.
  struct Plane {
    Vec3 n;
    Vec3 q;
  };
  std::vector<std::vector<Plane>> class_planes(dm.num_classes);
  const double diam = std::max(c.bbox_diameter(), 1.0);
  for (const auto& bl : c.boundaries) {
    for (index_t v : bl.chain) {
      const index_t cls = dm.node_class[dm.flat_node(bl.incident.first, v)];
      auto& planes = class_planes[cls];
      bool known = false;
      for (const auto& p : planes) {
        if (std::abs(p.n.dot(bl.plane_normal)) > 1.0 - 1e-9 &&
            std::abs((bl.plane_point - p.q).dot(p.n)) < 1e-9 * diam) {
          known = true;
          break;
        }
      }
      if (!known) planes.push_back({bl.plane_normal, bl.plane_point});
    }
  }

  // X frames and offsets.
  dm.frames.resize(dm.num_classes);
  dm.n_x = 0;
  for (index_t cls = 0; cls < dm.num_classes; ++cls) {
    const auto& planes = class_planes[cls];
    DofMap::ClassFrame fr;
    fr.columns = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
    const bool junction_member = class_size[cls] > 1;
    if (planes.size() >= 2 && junction_member)
      throw std::runtime_error(
          "unsupported configuration: junction vertex constrained to two non-parallel planes");
    if (planes.empty()) {
      fr.num_free = c.dim;
      fr.columns[0] = Vec3::UnitX();
      fr.columns[1] = Vec3::UnitY();
      if (c.dim == 3) fr.columns[2] = Vec3::UnitZ();
    } else if (planes.size() == 1) {
      fr.num_free = c.dim - 1;
      const auto tangents = householder_tangents(planes[0].n, c.dim);
      fr.columns[0] = tangents[0];
      if (c.dim == 3) fr.columns[1] = tangents[1];
    } else if (planes.size() == 2 && c.dim == 3) {
      Vec3 t = planes[0].n.cross(planes[1].n);
      const double tn = t.norm();
      if (!(tn > 0.0)) throw std::runtime_error("conflicting parallel plane constraints");
      fr.num_free = 1;
      fr.columns[0] = t / tn;
    } else {
      fr.num_free = 0;  // pinned
    }
    fr.x_offset = fr.num_free > 0 ? dm.n_x : -1;
    dm.n_x += fr.num_free;
    dm.frames[cls] = fr;
  }

  // kappa constraints, gathered per class.
  struct Row {
    std::vector<std::pair<index_t, double>> entries;  // (flat node, coeff)
  };
  std::vector<std::vector<Row>> class_rows(dm.num_classes);
  for (const auto& tj : c.junctions) {
    const index_t Z = tj.arity();
    for (index_t l = 0; l < Z; ++l) {
      Row row;
      for (int j = 0; j < 3; ++j)
        row.entries.push_back({dm.flat_node(tj.incident[j].first, tj.correspondence[j][l]),
                               static_cast<double>(tj.orientation[j])});
      class_rows[dm.node_class[row.entries[0].first]].push_back(std::move(row));
    }
  }

  // Per class: eliminate by reduced row echelon form, pivoting on the
  // highest-numbered copies first.
  dm.kappa_expansion.resize(dm.num_nodes);
  dm.kappa_dof_of_node.assign(dm.num_nodes, -2);  // -2 = not yet decided
  std::vector<std::vector<std::pair<index_t, std::vector<std::pair<index_t, double>>>>>
      eliminated(dm.num_classes);
  std::vector<index_t> class_members_scratch;
  for (index_t cls = 0; cls < dm.num_classes; ++cls) {
    if (class_rows[cls].empty()) continue;
    // Collect members, ordered descending so pivots remove the
    // highest-numbered surface copies.
    class_members_scratch.clear();
    for (const auto& row : class_rows[cls])
      for (const auto& [node, coeff] : row.entries) class_members_scratch.push_back(node);
    std::sort(class_members_scratch.begin(), class_members_scratch.end(), std::greater<>());
    class_members_scratch.erase(
        std::unique(class_members_scratch.begin(), class_members_scratch.end()),
        class_members_scratch.end());
    const index_t ncols = static_cast<index_t>(class_members_scratch.size());
    const index_t nrows = static_cast<index_t>(class_rows[cls].size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nrows, ncols);
    for (index_t rI = 0; rI < nrows; ++rI)
      for (const auto& [node, coeff] : class_rows[cls][rI].entries) {
        const auto it = std::find(class_members_scratch.begin(), class_members_scratch.end(),
                                  node);
        A(rI, it - class_members_scratch.begin()) += coeff;
      }
    // RREF with partial pivoting.
    std::vector<index_t> pivot_cols;
    index_t row = 0;
    for (index_t col = 0; col < ncols && row < nrows; ++col) {
      index_t best = row;
      for (index_t r2 = row + 1; r2 < nrows; ++r2)
        if (std::abs(A(r2, col)) > std::abs(A(best, col))) best = r2;
      if (std::abs(A(best, col)) < 1e-10) continue;
      A.row(row).swap(A.row(best));
      A.row(row) /= A(row, col);
      for (index_t r2 = 0; r2 < nrows; ++r2)
        if (r2 != row && A(r2, col) != 0.0) A.row(r2) -= A(r2, col) * A.row(row);
      pivot_cols.push_back(col);
      ++row;
    }
    for (index_t p = 0; p < static_cast<index_t>(pivot_cols.size()); ++p) {
      const index_t node = class_members_scratch[pivot_cols[p]];
      std::vector<std::pair<index_t, double>> combo;  // over free nodes
      for (index_t col = 0; col < ncols; ++col) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), col) != pivot_cols.end()) continue;
        const double v = -A(p, col);
        if (v != 0.0) combo.push_back({class_members_scratch[col], v});
      }
      eliminated[cls].push_back({node, std::move(combo)});
      dm.kappa_dof_of_node[node] = -1;
    }
  }

  // Free-node numbering in flat order.
  dm.n_kappa = 0;
  for (index_t n = 0; n < dm.num_nodes; ++n) {
    if (dm.kappa_dof_of_node[n] == -1) continue;
    dm.kappa_dof_of_node[n] = dm.n_kappa++;
  }
  for (index_t n = 0; n < dm.num_nodes; ++n) {
    if (dm.kappa_dof_of_node[n] >= 0)
      dm.kappa_expansion[n].terms = {{dm.kappa_dof_of_node[n], 1.0}};
  }
  for (index_t cls = 0; cls < dm.num_classes; ++cls) {
    for (const auto& [node, combo] : eliminated[cls]) {
      auto& terms = dm.kappa_expansion[node].terms;
      terms.clear();
      for (const auto& [free_node, coeff] : combo)
        terms.push_back({dm.kappa_dof_of_node[free_node], coeff});
    }
  }
  return dm;
}

}  // namespace sdcluster
