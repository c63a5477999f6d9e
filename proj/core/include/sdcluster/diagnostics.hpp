#pragma once

#include "sdcluster/cluster.hpp"

#include <string>
#include <vector>

namespace sdcluster {

/// Per-step record written to the diagnostics CSV.
struct StepDiagnostics {
  double t = 0.0;
  double energy_surface = 0.0;
  double energy_contact = 0.0;
  double energy_total = 0.0;
  std::vector<double> volumes;  // per region
  double v_delta = 0.0;         // relative volume error
  double mesh_ratio = 1.0;
  int picard_iters = 0;
};

/// A(Gamma) = sum_i sigma_i |Gamma_i| (isotropic) or
/// A_gamma(Gamma) = sum_i int gamma(nu_i) (anisotropic).
double surface_energy(const Cluster& c);

/// max over regions of |vol - vol0| / |vol0|. Throws on vol0 = 0.
double relative_volume_error(const std::vector<double>& current,
                             const std::vector<double>& initial);

std::vector<double> region_volumes(const Cluster& c);

/// CSV schema: t, energy_surface, energy_contact, energy_total,
/// vol_1..vol_IR, v_delta, mesh_ratio, picard_iters. 17 significant digits,
/// '\n' line endings.
std::string csv_header(index_t num_regions);
std::string csv_row(const StepDiagnostics& d);

}  // namespace sdcluster
