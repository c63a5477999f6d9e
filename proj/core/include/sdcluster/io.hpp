#pragma once

#include "sdcluster/cluster.hpp"
#include "sdcluster/scenarios.hpp"
#include "sdcluster/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sdcluster {

/// Cluster file format: one JSON document with arrays "patches" (vertices
/// row-major, simplices flat), "junctions", "boundaries", "regions" and an
/// "energy_model" object. All floats carry 17 significant digits.
std::string cluster_to_json(const Cluster& c);
Cluster cluster_from_json(const std::string& text);
void write_cluster_file(const Cluster& c, const std::string& path);
Cluster read_cluster_file(const std::string& path);

struct OutputConfig {
  std::string csv = "diagnostics.csv";
  std::vector<double> frame_times;
  std::string frame_dir = "frames";
};

/// Parsed run configuration:
/// { scenario | cluster_file, dt, T_final, mode, energy, rho, output,
///   picard, linear_solver }
struct RunFileConfig {
  std::optional<ScenarioSpec> scenario;
  std::optional<std::string> cluster_file;
  SolverConfig solver;
  double t_final = 1.0;
  std::optional<EnergyModel> energy;       // overrides the cluster's model
  std::string energy_json;                 // raw anisotropy spec, resolved per dim
  std::vector<double> sigma;               // per-patch, isotropic mode
  std::vector<double> rho;                 // per boundary line (or single value)
  OutputConfig output;
};

RunFileConfig parse_run_config(const std::string& text);
RunFileConfig read_run_config(const std::string& path);

/// Builds the initial cluster of a run: scenario or cluster file, then
/// energy / sigma / rho overrides.
Cluster build_initial_cluster(const RunFileConfig& cfg);

/// Frame output. d = 2: per-curve CSV polylines, one "x,y" row per vertex,
/// blank line between curves (path gets suffix ".csv"). d = 3: OBJ with one
/// object per patch ("o surface_<i>", 1-based vertex indices) plus a sidecar
/// "<path>.chains.json" listing junction and boundary chains.
void write_frame(const Cluster& c, const std::string& path_base);

std::string frame_path(const OutputConfig& out, double t);

}  // namespace sdcluster
