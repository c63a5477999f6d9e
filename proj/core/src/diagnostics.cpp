#include "sdcluster/diagnostics.hpp"

#include "sdcluster/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sdcluster {

double surface_energy(const Cluster& c) {
  const bool anisotropic = c.energy.kind == EnergyModel::Kind::Anisotropic;
  double total = 0.0;
  for (const auto& patch : c.patches) {
    double s = 0.0;
    for (index_t j = 0; j < patch.num_simplices(); ++j) {
      const Vec3 a = orientation_vector_of(patch, patch.vertices, j);
      const double norm = a.norm();
      const double measure = patch.dim == 3 ? 0.5 * norm : norm;
      if (anisotropic) {
        if (!(norm > 0.0)) continue;
        s += measure * c.energy.anisotropy.gamma(a / norm);
      } else {
        s += measure;
      }
    }
    total += anisotropic ? s : patch.sigma * s;
  }
  return total;
}

double relative_volume_error(const std::vector<double>& current,
                             const std::vector<double>& initial) {
  if (current.size() != initial.size())
    throw std::invalid_argument("volume vectors must have equal length");
  double worst = 0.0;
  for (size_t l = 0; l < current.size(); ++l) {
    if (initial[l] == 0.0) throw std::domain_error("zero initial volume");
    worst = std::max(worst, std::abs((current[l] - initial[l]) / initial[l]));
  }
  return worst;
}

std::vector<double> region_volumes(const Cluster& c) {
  std::vector<double> vols;
  vols.reserve(c.regions.size());
  for (index_t l = 0; l < static_cast<index_t>(c.regions.size()); ++l)
    vols.push_back(region_volume(c, l));
  return vols;
}

std::string csv_header(index_t num_regions) {
  std::ostringstream os;
  os << "t,energy_surface,energy_contact,energy_total";
  for (index_t l = 1; l <= num_regions; ++l) os << ",vol_" << l;
  os << ",v_delta,mesh_ratio,picard_iters\n";
  return os.str();
}

std::string csv_row(const StepDiagnostics& d) {
  std::ostringstream os;
  os << format_float17(d.t) << ',' << format_float17(d.energy_surface) << ','
     << format_float17(d.energy_contact) << ',' << format_float17(d.energy_total);
  for (double v : d.volumes) os << ',' << format_float17(v);
  os << ',' << format_float17(d.v_delta) << ',' << format_float17(d.mesh_ratio) << ','
     << d.picard_iters << '\n';
  return os.str();
}

}  // namespace sdcluster
