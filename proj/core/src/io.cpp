#include "sdcluster/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sdcluster {

using nlohmann::json;

namespace {

void append_float_array(std::string& out, const double* data, size_t n) {
  out += '[';
  for (size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += format_float17(data[i]);
  }
  out += ']';
}

std::string vec_json(const Vec3& v, int dim) {
  std::string s;
  append_float_array(s, v.data(), static_cast<size_t>(dim));
  return s;
}

Vec3 vec_from(const json& j, int dim) {
  Vec3 v = Vec3::Zero();
  if (static_cast<int>(j.size()) != dim) throw std::invalid_argument("bad vector length");
  for (int a = 0; a < dim; ++a) v[a] = j[a].get<double>();
  return v;
}

json anisotropy_to_json(const Anisotropy& a) {
  json j;
  j["kind"] = "matrices";
  j["dim"] = a.dim();
  j["r"] = a.exponent();
  json mats = json::array();
  for (int l = 0; l < a.num_terms(); ++l) {
    json rows = json::array();
    for (int r = 0; r < a.dim(); ++r)
      for (int cc = 0; cc < a.dim(); ++cc) rows.push_back(a.g(l)(r, cc));
    mats.push_back(rows);
  }
  j["matrices"] = mats;
  return j;
}

Anisotropy anisotropy_from_json(const json& j, int dim) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "isotropic") return make_isotropic_anisotropy(dim);
  if (kind == "cusp")
    return make_cusp_anisotropy(j.value("dim", dim), j.value("r", 1.0),
                                j.at("epsilon").get<double>());
  if (kind == "rotation2d")
    return make_rotation_anisotropy_2d(j.at("L").get<int>(), j.at("epsilon").get<double>());
  if (kind == "matrices") {
    const int d = j.value("dim", dim);
    std::vector<Mat3> mats;
    for (const auto& rows : j.at("matrices")) {
      if (static_cast<int>(rows.size()) != d * d)
        throw std::invalid_argument("anisotropy matrix needs d*d entries");
      Mat3 g = Mat3::Identity();
      for (int r = 0; r < d; ++r)
        for (int cc = 0; cc < d; ++cc) g(r, cc) = rows[r * d + cc].get<double>();
      mats.push_back(g);
    }
    return Anisotropy(d, j.value("r", 1.0), std::move(mats));
  }
  throw std::invalid_argument("unknown anisotropy kind: " + kind);
}

}  // namespace

std::string cluster_to_json(const Cluster& c) {
  std::string out;
  out.reserve(1 << 20);
  out += "{\n\"dim\": " + std::to_string(c.dim) + ",\n\"patches\": [";
  for (size_t i = 0; i < c.patches.size(); ++i) {
    const SurfacePatch& p = c.patches[i];
    if (i) out += ',';
    out += "\n{\"surface_id\": " + std::to_string(p.surface_id);
    out += ", \"dim\": " + std::to_string(p.dim);
    out += ", \"sigma\": " + format_float17(p.sigma);
    out += ", \"vertices\": [";
    for (index_t k = 0; k < p.num_vertices(); ++k)
      for (int a = 0; a < p.dim; ++a) {
        if (k || a) out += ',';
        out += format_float17(p.vertices[k][a]);
      }
    out += "], \"simplices\": [";
    for (index_t j = 0; j < p.num_simplices(); ++j)
      for (int a = 0; a < p.dim; ++a) {
        if (j || a) out += ',';
        out += std::to_string(p.simplices[j][a]);
      }
    out += "]}";
  }
  out += "],\n\"junctions\": [";
  for (size_t k = 0; k < c.junctions.size(); ++k) {
    const TripleJunction& tj = c.junctions[k];
    if (k) out += ',';
    out += "\n{\"tj_id\": " + std::to_string(tj.tj_id) + ", \"incident\": [";
    for (int j = 0; j < 3; ++j) {
      if (j) out += ',';
      out += '[' + std::to_string(tj.incident[j].first) + ',' +
             std::to_string(tj.incident[j].second) + ']';
    }
    out += "], \"orientation\": [" + std::to_string(tj.orientation[0]) + ',' +
           std::to_string(tj.orientation[1]) + ',' + std::to_string(tj.orientation[2]);
    out += "], \"correspondence\": [";
    for (int j = 0; j < 3; ++j) {
      if (j) out += ',';
      out += '[';
      for (size_t l = 0; l < tj.correspondence[j].size(); ++l) {
        if (l) out += ',';
        out += std::to_string(tj.correspondence[j][l]);
      }
      out += ']';
    }
    out += "]}";
  }
  out += "],\n\"boundaries\": [";
  for (size_t k = 0; k < c.boundaries.size(); ++k) {
    const BoundaryLine& bl = c.boundaries[k];
    if (k) out += ',';
    out += "\n{\"bl_id\": " + std::to_string(bl.bl_id);
    out += ", \"incident\": [" + std::to_string(bl.incident.first) + ',' +
           std::to_string(bl.incident.second) + ']';
    out += ", \"plane\": {\"point\": " + vec_json(bl.plane_point, c.dim);
    out += ", \"normal\": " + vec_json(bl.plane_normal, c.dim) + '}';
    out += ", \"contact_param\": " + format_float17(bl.contact_param);
    out += ", \"chain\": [";
    for (size_t l = 0; l < bl.chain.size(); ++l) {
      if (l) out += ',';
      out += std::to_string(bl.chain[l]);
    }
    out += "]}";
  }
  out += "],\n\"regions\": [";
  for (size_t l = 0; l < c.regions.size(); ++l) {
    const Region& r = c.regions[l];
    if (l) out += ',';
    out += "\n{\"region_id\": " + std::to_string(r.region_id) + ", \"surface_set\": [";
    for (size_t i = 0; i < r.surface_set.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(r.surface_set[i]);
    }
    out += "], \"orientation\": [";
    for (size_t i = 0; i < r.orientation.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(r.orientation[i]);
    }
    out += "], \"plane_set\": [";
    for (size_t i = 0; i < r.plane_set.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(r.plane_set[i]);
    }
    out += "], \"reference_point\": " + vec_json(r.reference_point, c.dim) + '}';
  }
  out += "],\n\"energy_model\": ";
  if (c.energy.kind == EnergyModel::Kind::Isotropic) {
    out += "{\"kind\": \"isotropic\"}";
  } else {
    out += "{\"kind\": \"anisotropic\", \"anisotropy\": ";
    out += anisotropy_to_json(c.energy.anisotropy).dump();
    out += '}';
  }
  out += "\n}\n";
  return out;
}

Cluster cluster_from_json(const std::string& text) {
  const json j = json::parse(text);
  Cluster c;
  c.dim = j.at("dim").get<int>();
  if (c.dim != 2 && c.dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  for (const auto& pj : j.at("patches")) {
    SurfacePatch p;
    p.surface_id = pj.at("surface_id").get<index_t>();
    p.dim = pj.at("dim").get<int>();
    p.sigma = pj.value("sigma", 1.0);
    const auto& verts = pj.at("vertices");
    if (verts.size() % p.dim != 0) throw std::invalid_argument("vertices not row-major d-tuples");
    for (size_t k = 0; k < verts.size(); k += p.dim) {
      Vec3 v = Vec3::Zero();
      for (int a = 0; a < p.dim; ++a) v[a] = verts[k + a].get<double>();
      p.vertices.push_back(v);
    }
    const auto& simp = pj.at("simplices");
    if (simp.size() % p.dim != 0) throw std::invalid_argument("simplices not d-tuples");
    for (size_t k = 0; k < simp.size(); k += p.dim) {
      std::array<index_t, 3> s = {-1, -1, -1};
      for (int a = 0; a < p.dim; ++a) s[a] = simp[k + a].get<index_t>();
      p.simplices.push_back(s);
    }
    c.patches.push_back(std::move(p));
  }
  for (const auto& tj_j : j.value("junctions", json::array())) {
    TripleJunction tj;
    tj.tj_id = tj_j.at("tj_id").get<index_t>();
    for (int jj = 0; jj < 3; ++jj) {
      tj.incident[jj] = {tj_j.at("incident")[jj][0].get<index_t>(),
                         tj_j.at("incident")[jj][1].get<index_t>()};
      tj.orientation[jj] = tj_j.at("orientation")[jj].get<int>();
      for (const auto& v : tj_j.at("correspondence")[jj])
        tj.correspondence[jj].push_back(v.get<index_t>());
    }
    c.junctions.push_back(std::move(tj));
  }
  for (const auto& bj : j.value("boundaries", json::array())) {
    BoundaryLine bl;
    bl.bl_id = bj.at("bl_id").get<index_t>();
    bl.incident = {bj.at("incident")[0].get<index_t>(), bj.at("incident")[1].get<index_t>()};
    bl.plane_point = vec_from(bj.at("plane").at("point"), c.dim);
    bl.plane_normal = vec_from(bj.at("plane").at("normal"), c.dim);
    bl.contact_param = bj.value("contact_param", 0.0);
    for (const auto& v : bj.at("chain")) bl.chain.push_back(v.get<index_t>());
    c.boundaries.push_back(std::move(bl));
  }
  for (const auto& rj : j.value("regions", json::array())) {
    Region r;
    r.region_id = rj.at("region_id").get<index_t>();
    for (const auto& v : rj.at("surface_set")) r.surface_set.push_back(v.get<index_t>());
    for (const auto& v : rj.at("orientation")) r.orientation.push_back(v.get<int>());
    for (const auto& v : rj.value("plane_set", json::array()))
      r.plane_set.push_back(v.get<index_t>());
    r.reference_point = vec_from(rj.at("reference_point"), c.dim);
    c.regions.push_back(std::move(r));
  }
  if (j.contains("energy_model")) {
    const auto& ej = j.at("energy_model");
    const std::string kind = ej.at("kind").get<std::string>();
    if (kind == "isotropic") {
      c.energy.kind = EnergyModel::Kind::Isotropic;
    } else if (kind == "anisotropic") {
      c.energy.kind = EnergyModel::Kind::Anisotropic;
      c.energy.anisotropy = anisotropy_from_json(ej.at("anisotropy"), c.dim);
    } else {
      throw std::invalid_argument("unknown energy model kind: " + kind);
    }
  }
  return c;
}

void write_cluster_file(const Cluster& c, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << cluster_to_json(c);
}

Cluster read_cluster_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return cluster_from_json(ss.str());
}

RunFileConfig parse_run_config(const std::string& text) {
  const json j = json::parse(text);
  RunFileConfig cfg;
  if (j.contains("scenario")) {
    const auto& sj = j.at("scenario");
    ScenarioSpec spec;
    spec.name = sj.at("name").get<std::string>();
    spec.K = sj.value("K", 0);
    spec.n_bubbles = sj.value("n_bubbles", 2);
    spec.dim = sj.value("dim", 3);
    spec.rho = sj.value("rho", 0.0);
    cfg.scenario = spec;
  }
  if (j.contains("cluster_file")) cfg.cluster_file = j.at("cluster_file").get<std::string>();
  if (!cfg.scenario && !cfg.cluster_file)
    throw std::invalid_argument("config needs either \"scenario\" or \"cluster_file\"");
  if (cfg.scenario && cfg.cluster_file)
    throw std::invalid_argument("config must not set both \"scenario\" and \"cluster_file\"");
  cfg.solver.dt = j.at("dt").get<double>();
  cfg.t_final = j.at("T_final").get<double>();
  const std::string mode = j.value("mode", "sp");
  if (mode == "sp")
    cfg.solver.mode = SolverConfig::Mode::SP;
  else if (mode == "bgn")
    cfg.solver.mode = SolverConfig::Mode::BGN;
  else
    throw std::invalid_argument("mode must be \"sp\" or \"bgn\"");
  if (j.contains("picard")) {
    cfg.solver.picard_tol = j.at("picard").value("tol", cfg.solver.picard_tol);
    cfg.solver.picard_max = j.at("picard").value("max", cfg.solver.picard_max);
  }
  const std::string lin = j.value("linear_solver", "direct");
  if (lin == "direct")
    cfg.solver.linear_solver = SolverConfig::LinearSolver::Direct;
  else if (lin == "minres")
    cfg.solver.linear_solver = SolverConfig::LinearSolver::Minres;
  else
    throw std::invalid_argument("linear_solver must be \"direct\" or \"minres\"");
  if (j.contains("energy")) {
    const auto& ej = j.at("energy");
    const std::string kind = ej.at("kind").get<std::string>();
    EnergyModel model;
    if (kind == "isotropic") {
      model.kind = EnergyModel::Kind::Isotropic;
      if (ej.contains("sigma")) {
        if (ej.at("sigma").is_array())
          for (const auto& s : ej.at("sigma")) cfg.sigma.push_back(s.get<double>());
        else
          cfg.sigma.push_back(ej.at("sigma").get<double>());
      }
    } else {
      model.kind = EnergyModel::Kind::Anisotropic;
      // anisotropy resolved against the cluster dimension later
    }
    cfg.energy = model;
    if (model.kind == EnergyModel::Kind::Anisotropic) cfg.energy_json = ej.dump();
  }
  if (j.contains("rho")) {
    if (j.at("rho").is_array())
      for (const auto& r : j.at("rho")) cfg.rho.push_back(r.get<double>());
    else
      cfg.rho.push_back(j.at("rho").get<double>());
  }
  if (j.contains("output")) {
    const auto& oj = j.at("output");
    cfg.output.csv = oj.value("csv", cfg.output.csv);
    if (oj.contains("frames"))
      for (const auto& t : oj.at("frames")) cfg.output.frame_times.push_back(t.get<double>());
    cfg.output.frame_dir = oj.value("frame_dir", cfg.output.frame_dir);
  }
  return cfg;
}

RunFileConfig read_run_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_run_config(ss.str());
}

Cluster build_initial_cluster(const RunFileConfig& cfg) {
  Cluster c = cfg.scenario ? make_scenario(*cfg.scenario) : read_cluster_file(*cfg.cluster_file);
  if (cfg.energy) {
    c.energy = *cfg.energy;
    if (c.energy.kind == EnergyModel::Kind::Anisotropic)
      c.energy.anisotropy = anisotropy_from_json(json::parse(cfg.energy_json), c.dim);
  }
  if (!cfg.sigma.empty()) {
    if (cfg.sigma.size() == 1) {
      for (auto& p : c.patches) p.sigma = cfg.sigma[0];
    } else if (cfg.sigma.size() == c.patches.size()) {
      for (size_t i = 0; i < c.patches.size(); ++i) c.patches[i].sigma = cfg.sigma[i];
    } else {
      throw std::invalid_argument("sigma must have one entry or one per surface");
    }
  }
  if (!cfg.rho.empty()) {
    if (cfg.rho.size() == 1) {
      for (auto& b : c.boundaries) b.contact_param = cfg.rho[0];
    } else if (cfg.rho.size() == c.boundaries.size()) {
      for (size_t k = 0; k < c.boundaries.size(); ++k)
        c.boundaries[k].contact_param = cfg.rho[k];
    } else {
      throw std::invalid_argument("rho must have one entry or one per boundary line");
    }
  }
  return c;
}

void write_frame(const Cluster& c, const std::string& path_base) {
  namespace fs = std::filesystem;
  const fs::path base(path_base);
  if (base.has_parent_path()) fs::create_directories(base.parent_path());
  if (c.dim == 2) {
    std::ofstream os(path_base + ".csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot open frame file " + path_base + ".csv");
    for (size_t i = 0; i < c.patches.size(); ++i) {
      if (i) os << '\n';
      for (const auto& q : c.patches[i].vertices)
        os << format_float17(q.x()) << ',' << format_float17(q.y()) << '\n';
    }
    return;
  }
  std::ofstream os(path_base + ".obj", std::ios::binary);
  if (!os) throw std::runtime_error("cannot open frame file " + path_base + ".obj");
  std::vector<index_t> base_index(c.patches.size() + 1, 0);
  for (size_t i = 0; i < c.patches.size(); ++i)
    base_index[i + 1] = base_index[i] + c.patches[i].num_vertices();
  for (size_t i = 0; i < c.patches.size(); ++i) {
    os << "o surface_" << c.patches[i].surface_id << '\n';
    for (const auto& q : c.patches[i].vertices)
      os << "v " << format_float17(q.x()) << ' ' << format_float17(q.y()) << ' '
         << format_float17(q.z()) << '\n';
    for (const auto& s : c.patches[i].simplices)
      os << "f " << base_index[i] + s[0] + 1 << ' ' << base_index[i] + s[1] + 1 << ' '
         << base_index[i] + s[2] + 1 << '\n';
  }
  json side;
  side["junctions"] = json::array();
  for (const auto& tj : c.junctions) {
    json jj;
    jj["tj_id"] = tj.tj_id;
    jj["chains"] = json::array();
    for (int j = 0; j < 3; ++j) {
      json chain = json::array();
      for (index_t v : tj.correspondence[j])
        chain.push_back(base_index[tj.incident[j].first] + v + 1);
      jj["chains"].push_back(chain);
    }
    side["junctions"].push_back(jj);
  }
  side["boundaries"] = json::array();
  for (const auto& bl : c.boundaries) {
    json bj;
    bj["bl_id"] = bl.bl_id;
    json chain = json::array();
    for (index_t v : bl.chain) chain.push_back(base_index[bl.incident.first] + v + 1);
    bj["chain"] = chain;
    side["boundaries"].push_back(bj);
  }
  std::ofstream sidecar(path_base + ".chains.json", std::ios::binary);
  sidecar << side.dump(1) << '\n';
}

std::string frame_path(const OutputConfig& out, double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "frame_t%.6g", t);
  return (std::filesystem::path(out.frame_dir) / buf).string();
}

}  // namespace sdcluster
