#include "sdcluster/assembly.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sdcluster {

ElementBlocks isotropic_element_stiffness(const ElementGeometry& g, double sigma) {
  ElementBlocks blocks;
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b)
      blocks[a][b] =
          sigma * g.measure * g.basis_gradients[a].dot(g.basis_gradients[b]) * Mat3::Identity();
  return blocks;
}

ElementBlocks anisotropic_element_stiffness(const ElementGeometry& g,
                                            const Vec3& lagged_unit_normal,
                                            const Anisotropy& a) {
  if (g.degenerate) throw std::runtime_error("degenerate simplex");
  ElementBlocks blocks;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) blocks[i][j] = Mat3::Zero();
  const std::vector<double> w = a.term_weights(lagged_unit_normal);
  std::vector<Vec3> edges;
  for (int e = 1; e < g.dim; ++e) edges.push_back(g.coords[e] - g.coords[0]);
  for (int l = 0; l < a.num_terms(); ++l) {
    const auto basis = gtilde_tangent_basis(edges, a.gtilde(l), g.dim);
    const double coeff = w[l] * a.gamma_l(l, g.normal) * g.measure;
    double proj[3][3] = {};
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) {
        double s = 0.0;
        for (const Vec3& t : basis) s += g.basis_gradients[i].dot(t) * g.basis_gradients[j].dot(t);
        proj[i][j] = s;
      }
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) blocks[i][j] += coeff * proj[i][j] * a.gtilde(l);
  }
  return blocks;
}

namespace {

struct Scatter {
  const DofMap& dm;
  std::vector<Eigen::Triplet<double>>& triplets;
  Eigen::VectorXd& rhs;
  index_t x_base;  // column/row offset of the x block

  // kappa-row x-column coupling and its transpose.
  void coupling(index_t knode, index_t xnode, const Vec3& vec) {
    const auto& fr = dm.frames[dm.node_class[xnode]];
    for (const auto& [kdof, kc] : dm.kappa_expansion[knode].terms) {
      for (int t = 0; t < fr.num_free; ++t) {
        const double v = kc * vec.dot(fr.columns[t]);
        triplets.emplace_back(kdof, x_base + fr.x_offset + t, v);
        triplets.emplace_back(x_base + fr.x_offset + t, kdof, v);
      }
    }
  }

  void kappa_stiffness(index_t na, index_t nb, double value) {
    for (const auto& [da, ca] : dm.kappa_expansion[na].terms)
      for (const auto& [db, cb] : dm.kappa_expansion[nb].terms)
        triplets.emplace_back(da, db, value * ca * cb);
  }

  void x_stiffness(index_t na, index_t nb, const Mat3& block) {
    const auto& fa = dm.frames[dm.node_class[na]];
    const auto& fb = dm.frames[dm.node_class[nb]];
    for (int s = 0; s < fa.num_free; ++s)
      for (int t = 0; t < fb.num_free; ++t)
        triplets.emplace_back(x_base + fa.x_offset + s, x_base + fb.x_offset + t,
                              fa.columns[s].dot(block * fb.columns[t]));
  }

  void x_load(index_t na, const Vec3& value) {
    const auto& fa = dm.frames[dm.node_class[na]];
    for (int t = 0; t < fa.num_free; ++t)
      rhs[x_base + fa.x_offset + t] += value.dot(fa.columns[t]);
  }
};

}  // namespace

AssembledSystem assemble(const Cluster& c, const Positions& lagged, double dt,
                         const DofMap& dofs) {
  const int d = c.dim;
  const bool anisotropic = c.energy.kind == EnergyModel::Kind::Anisotropic;
  const double measure_floor = degenerate_measure_threshold(c);

  AssembledSystem sys;
  sys.n_kappa = dofs.n_kappa;
  sys.n_x = dofs.n_x;
  sys.dt = dt;
  const index_t n = dofs.n_kappa + dofs.n_x;
  sys.rhs = Eigen::VectorXd::Zero(n);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(c.total_simplices()) * 9 * d * d);
  Scatter scatter{dofs, triplets, sys.rhs, dofs.n_kappa};

  for (index_t i = 0; i < c.num_patches(); ++i) {
    const SurfacePatch& patch = c.patches[i];
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      const ElementGeometry g = element_geometry(patch, patch.vertices, j);
      if (g.measure < measure_floor) throw std::runtime_error("degenerate simplex");
      Vec3 q_lag[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
      for (int a = 0; a < d; ++a) q_lag[a] = lagged[i][patch.simplices[j][a]];
      const Vec3 nu_half = weighted_normal(g, q_lag);

      // B block: (|sigma|/d) nu^{m+1/2,p} at each vertex, kappa vs X.
      const double lumped_w = g.measure / d;
      for (int a = 0; a < d; ++a) {
        const index_t node = dofs.flat_node(i, patch.simplices[j][a]);
        scatter.coupling(node, node, lumped_w * nu_half);
      }

      // -dt S_kappa block.
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const double s = g.measure * g.basis_gradients[a].dot(g.basis_gradients[b]);
          scatter.kappa_stiffness(dofs.flat_node(i, patch.simplices[j][a]),
                                  dofs.flat_node(i, patch.simplices[j][b]), -dt * s);
        }

      // S_X block and the -S_X id load.
      ElementBlocks blocks;
      if (anisotropic) {
        const Vec3 a_lag = orientation_vector(q_lag, d);
        if (!(a_lag.norm() > 0.0)) throw std::runtime_error("degenerate simplex");
        blocks = anisotropic_element_stiffness(g, a_lag / a_lag.norm(), c.energy.anisotropy);
      } else {
        blocks = isotropic_element_stiffness(g, patch.sigma);
      }
      for (int a = 0; a < d; ++a) {
        const index_t na = dofs.flat_node(i, patch.simplices[j][a]);
        Vec3 load = Vec3::Zero();
        for (int b = 0; b < d; ++b) {
          const index_t nb = dofs.flat_node(i, patch.simplices[j][b]);
          scatter.x_stiffness(na, nb, blocks[a][b]);
          load -= blocks[a][b] * g.coords[b];
        }
        scatter.x_load(na, load);
      }
    }
  }

  // rho_k boundary terms with the lagged weighted xi.
  for (index_t k = 0; k < static_cast<index_t>(c.boundaries.size()); ++k) {
    const BoundaryLine& bl = c.boundaries[k];
    if (bl.contact_param == 0.0) continue;
    const index_t i = bl.incident.first;
    const SurfacePatch& patch = c.patches[i];
    if (d == 3) {
      for (index_t l = 0; l + 1 < static_cast<index_t>(bl.chain.size()); ++l) {
        const index_t va = bl.chain[l];
        const index_t vb = bl.chain[l + 1];
        const Vec3 a = patch.vertices[va];
        const Vec3 b = patch.vertices[vb];
        const Vec3 xi = weighted_xi_3d(a, b, lagged[i][va], lagged[i][vb], bl.plane_normal);
        const Vec3 val = bl.contact_param * 0.5 * (b - a).norm() * xi;
        scatter.x_load(dofs.flat_node(i, va), val);
        scatter.x_load(dofs.flat_node(i, vb), val);
      }
    } else {
      // Point integral: the 2d xi is fixed by the plane normal and the
      // boundary frame of the old state.
      const index_t v = bl.chain[0];
      Vec3 mu = Vec3::Zero(), nu = Vec3::Zero();
      bool found = false;
      for (index_t j = 0; j < patch.num_simplices() && !found; ++j)
        for (int a = 0; a < 2; ++a)
          if (patch.simplices[j][a] == v) {
            const Vec3 t = patch.vertices[patch.simplices[j][1]] -
                           patch.vertices[patch.simplices[j][0]];
            if (t.norm() > 0.0) {
              nu = rot_minus90(t.normalized());
              mu = (a == 1 ? t : Vec3(-t)).normalized();
              found = true;
            }
            break;
          }
      if (!found) throw std::runtime_error("degenerate boundary segment");
      scatter.x_load(dofs.flat_node(i, v), bl.contact_param * xi_2d(bl.plane_normal, nu, mu));
    }
  }

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return sys;
}

}  // namespace sdcluster
