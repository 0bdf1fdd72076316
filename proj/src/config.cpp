#include "vcfv/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "vcfv/errors.hpp"
#include "vcfv/gmsh_io.hpp"

namespace vcfv {

namespace {

struct Entry {
  std::string section;
  std::string key;
  std::vector<std::string> values;
  int line = 0;
};

[[noreturn]] void fail(const Entry& e, const std::string& msg) {
  std::ostringstream os;
  os << "config line " << e.line << " [" << e.section << "] " << e.key << ": " << msg;
  throw ConfigError(os.str());
}

double as_double(const Entry& e, std::size_t idx = 0) {
  if (idx >= e.values.size()) fail(e, "missing numeric value");
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.values[idx], &pos);
    if (pos != e.values[idx].size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(e, "expected a number, got '" + e.values[idx] + "'");
  }
}

long as_long(const Entry& e, std::size_t idx = 0) {
  const double v = as_double(e, idx);
  return static_cast<long>(v);
}

bool as_bool(const Entry& e) {
  if (e.values.empty()) fail(e, "missing value");
  const std::string& v = e.values[0];
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  fail(e, "expected true/false");
}

Vec3 as_vec(const Entry& e, std::size_t idx = 0) {
  Vec3 v;
  v.x = as_double(e, idx);
  if (idx + 1 < e.values.size()) v.y = as_double(e, idx + 1);
  if (idx + 2 < e.values.size()) v.z = as_double(e, idx + 2);
  return v;
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& name) {
  RunConfig cfg;
  std::string section;
  std::string line;
  int lineno = 0;
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(name + ":" + std::to_string(lineno) + ": malformed section header");
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) + ": expected key = value");
    Entry e;
    e.section = section;
    e.line = lineno;
    e.key = line.substr(0, eq);
    while (!e.key.empty() && (e.key.back() == ' ' || e.key.back() == '\t')) e.key.pop_back();
    std::istringstream vs(line.substr(eq + 1));
    std::string tok;
    while (vs >> tok) e.values.push_back(tok);
    entries.push_back(std::move(e));
  }

  bool saw_model = false;
  for (const Entry& e : entries) {
    const std::string& s = e.section;
    const std::string& k = e.key;
    const std::string v0 = e.values.empty() ? std::string() : e.values[0];
    if (s == "model") {
      if (k == "type") {
        saw_model = true;
        if (v0 == "euler")
          cfg.is_euler = true;
        else if (v0 == "scalar")
          cfg.is_euler = false;
        else
          fail(e, "valid types: scalar, euler");
      } else if (k == "gamma")
        cfg.gas.gamma = as_double(e);
      else if (k == "kind") {
        if (v0 == "advection")
          cfg.scalar.kind = ScalarKind::advection;
        else if (v0 == "burgers")
          cfg.scalar.kind = ScalarKind::burgers;
        else
          fail(e, "valid kinds: advection, burgers");
      } else if (k == "velocity")
        cfg.scalar.velocity = as_vec(e);
      else if (k == "burgers_dir")
        cfg.scalar.burgers_dir = as_vec(e);
      else
        fail(e, "unknown key");
    } else if (s == "mesh") {
      if (k == "source") {
        if (v0 == "box")
          cfg.mesh_source = MeshSource::box;
        else if (v0 == "gmsh")
          cfg.mesh_source = MeshSource::gmsh;
        else
          fail(e, "valid sources: box, gmsh");
      } else if (k == "file")
        cfg.mesh_file = v0;
      else if (k == "dimension")
        cfg.box.dim = static_cast<int>(as_long(e));
      else if (k == "extents")
        for (std::size_t i = 0; i < e.values.size() && i < 3; ++i)
          cfg.box.extents[i] = as_double(e, i);
      else if (k == "cells")
        for (std::size_t i = 0; i < e.values.size() && i < 3; ++i)
          cfg.box.cells[i] = static_cast<int>(as_long(e, i));
      else if (k == "split") {
        if (v0 == "uniform")
          cfg.box.split = BoxSplit::uniform;
        else if (v0 == "alternating")
          cfg.box.split = BoxSplit::alternating;
        else
          fail(e, "valid splits: uniform, alternating");
      } else if (k == "periodic") {
        for (const std::string& ax : e.values) {
          if (ax == "x")
            cfg.box.periodic[0] = true;
          else if (ax == "y")
            cfg.box.periodic[1] = true;
          else if (ax == "z")
            cfg.box.periodic[2] = true;
          else if (ax != "none")
            fail(e, "periodic axes are x, y, z or none");
        }
      } else if (k == "perturb")
        cfg.box.perturb = as_double(e);
      else if (k == "perturb_seed")
        cfg.box.perturb_seed = static_cast<std::uint64_t>(as_long(e));
      else
        fail(e, "unknown key");
    } else if (s == "interpolation") {
      if (k == "scheme") {
        if (v0 == "volume")
          cfg.interp = InterpScheme::volume;
        else if (v0 == "inverse_distance")
          cfg.interp = InterpScheme::inverse_distance;
        else if (v0 == "pseudo_laplacian")
          cfg.interp = InterpScheme::pseudo_laplacian;
        else if (v0 == "consistent_shepard")
          cfg.interp = InterpScheme::consistent_shepard;
        else
          fail(e, "valid schemes: volume, inverse_distance, pseudo_laplacian, consistent_shepard");
      } else
        fail(e, "unknown key");
    } else if (s == "reconstruction") {
      if (k == "scheme") {
        if (v0 == "first_order")
          cfg.recon = ReconScheme::first_order;
        else if (v0 == "frink")
          cfg.recon = ReconScheme::frink;
        else if (v0 == "upwind")
          cfg.recon = ReconScheme::upwind;
        else if (v0 == "jameson")
          cfg.recon = ReconScheme::jameson;
        else
          fail(e, "valid schemes: first_order, frink, upwind, jameson");
      } else if (k == "limited")
        cfg.limited = as_bool(e);
      else if (k == "jameson_q")
        cfg.jameson_q = as_double(e);
      else if (k == "jameson_eps")
        cfg.jameson_eps = as_double(e);
      else
        fail(e, "unknown key");
    } else if (s == "flux") {
      if (k == "type") {
        if (v0 == "scalar_upwind")
          cfg.flux = FluxKind::scalar_upwind;
        else if (v0 == "godunov_burgers")
          cfg.flux = FluxKind::godunov_burgers;
        else if (v0 == "roe")
          cfg.flux = FluxKind::roe;
        else if (v0 == "kfvs")
          cfg.flux = FluxKind::kfvs;
        else
          fail(e, "valid fluxes: scalar_upwind, godunov_burgers, roe, kfvs");
      } else
        fail(e, "unknown key");
    } else if (s == "initial") {
      if (k == "preset")
        cfg.preset = v0;
      else if (k == "step_position")
        cfg.step_position = as_double(e);
      else if (k == "step_normal")
        cfg.step_normal = as_vec(e);
      else if (k == "value_left")
        cfg.value_left = as_double(e);
      else if (k == "value_right")
        cfg.value_right = as_double(e);
      else if (k == "profile_mean")
        cfg.profile_mean = as_double(e);
      else if (k == "profile_amplitude")
        cfg.profile_amplitude = as_double(e);
      else if (k == "blast_gas_constant")
        cfg.blast_gas_constant = as_double(e);
      else if (k == "blast_core_radius")
        cfg.blast_core_radius = as_double(e);
      else if (k == "blast_core_temperature")
        cfg.blast_core_temperature = as_double(e);
      else if (k == "blast_ambient_temperature")
        cfg.blast_ambient_temperature = as_double(e);
      else if (k == "blast_density")
        cfg.blast_density = as_double(e);
      else
        fail(e, "unknown key");
    } else if (s == "boundary") {
      BoundaryCondition bc;
      if (v0 == "slip_wall")
        bc.kind = BCKind::slip_wall;
      else if (v0 == "transmissive")
        bc.kind = BCKind::transmissive;
      else if (v0 == "supersonic_inflow") {
        bc.kind = BCKind::supersonic_inflow;
        if (e.values.size() < 6) fail(e, "supersonic_inflow needs rho u v w p");
        bc.euler_state = {as_double(e, 1), as_vec(e, 2), as_double(e, 5)};
      } else if (v0 == "dirichlet") {
        bc.kind = BCKind::dirichlet_scalar;
        if (e.values.size() < 2) fail(e, "dirichlet needs a value");
        bc.scalar_value = as_double(e, 1);
      } else
        fail(e, "valid kinds: slip_wall, transmissive, supersonic_inflow, dirichlet");
      cfg.bcs[k] = bc;
    } else if (s == "time") {
      if (k == "cfl")
        cfg.time.cfl = as_double(e);
      else if (k == "t_end")
        cfg.time.t_end = as_double(e);
      else if (k == "fixed_dt")
        cfg.time.fixed_dt = as_double(e);
      else if (k == "integrator") {
        if (v0 == "forward_euler")
          cfg.time.integrator = Integrator::forward_euler;
        else if (v0 == "ssprk3")
          cfg.time.integrator = Integrator::ssprk3;
        else
          fail(e, "valid integrators: forward_euler, ssprk3");
      } else if (k == "max_steps")
        cfg.time.max_steps = as_long(e);
      else if (k == "monitor_max_principle")
        cfg.monitor_max_principle = as_bool(e);
      else
        fail(e, "unknown key");
    } else if (s == "output") {
      if (k == "directory")
        cfg.output_dir = v0;
      else if (k == "snapshot_interval")
        cfg.snapshot_interval = as_double(e);
      else if (k == "line_probe") {
        if (e.values.size() < 8) fail(e, "line_probe needs: ox oy oz dx dy dz length samples");
        LineProbeSpec p;
        p.origin = as_vec(e, 0);
        p.direction = as_vec(e, 3);
        p.length = as_double(e, 6);
        p.samples = static_cast<int>(as_long(e, 7));
        if (p.samples < 1) fail(e, "need at least one sample");
        cfg.line_probe = p;
      } else if (k == "radial_probe") {
        if (e.values.size() < 8) fail(e, "radial_probe needs: cx cy cz dx dy dz rmax samples");
        RadialProbeSpec p;
        p.center = as_vec(e, 0);
        p.direction = as_vec(e, 3);
        p.rmax = as_double(e, 6);
        p.samples = static_cast<int>(as_long(e, 7));
        if (p.samples < 1) fail(e, "need at least one sample");
        cfg.radial_probe = p;
      } else
        fail(e, "unknown key");
    } else {
      throw ConfigError(name + ":" + std::to_string(e.line) + ": unknown section [" + s + "]");
    }
  }

  if (!saw_model) throw ConfigError(name + ": missing [model] type");
  if (cfg.mesh_source == MeshSource::gmsh && cfg.mesh_file.empty())
    throw ConfigError(name + ": [mesh] source gmsh requires file = <path>");
  if (cfg.is_euler) {
    if (!cfg.flux)
      throw ConfigError(name + ": [flux] type is required for euler runs (valid: roe, kfvs)");
    if (*cfg.flux != FluxKind::roe && *cfg.flux != FluxKind::kfvs)
      throw ConfigError(name + ": euler runs need flux roe or kfvs");
  } else if (!cfg.flux) {
    cfg.flux = cfg.scalar.kind == ScalarKind::advection ? FluxKind::scalar_upwind
                                                        : FluxKind::godunov_burgers;
  }
  if (!(cfg.gas.gamma > 1.0)) throw ConfigError(name + ": gamma must exceed 1");
  if (!(cfg.time.cfl > 0.0)) throw ConfigError(name + ": cfl must be positive");
  if (cfg.time.fixed_dt && !(*cfg.time.fixed_dt > 0.0))
    throw ConfigError(name + ": fixed_dt must be positive");
  if (!cfg.preset.empty()) {
    const bool euler_preset =
        cfg.preset == "sod" || cfg.preset == "test2" || cfg.preset == "blast";
    const bool scalar_preset = cfg.preset == "advected_profile" || cfg.preset == "step";
    if (!euler_preset && !scalar_preset)
      throw ConfigError(name + ": unknown preset '" + cfg.preset +
                        "' (valid: sod, test2, blast, advected_profile, step)");
    if (euler_preset != cfg.is_euler)
      throw ConfigError(name + ": preset '" + cfg.preset + "' does not match the model type");
  }
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, path);
}

Mesh build_mesh(const RunConfig& cfg) {
  if (cfg.mesh_source == MeshSource::box) return generate_box(cfg.box);
  bool periodic = cfg.box.periodic[0] || cfg.box.periodic[1] || cfg.box.periodic[2];
  if (periodic)
    throw ConfigError("periodic boundaries are supported for generated box meshes only");
  return load_gmsh(cfg.mesh_file);
}

SolverConfig make_solver_config(const RunConfig& cfg, int dim) {
  SolverConfig sc;
  sc.is_euler = cfg.is_euler;
  sc.gas = cfg.gas;
  sc.scalar = cfg.scalar;
  sc.interp = cfg.interp;
  sc.recon = ReconConfig::for_dimension(cfg.recon, cfg.limited, dim);
  sc.recon.jameson_q = cfg.jameson_q;
  sc.recon.jameson_eps = cfg.jameson_eps;
  sc.flux = *cfg.flux;
  sc.monitor_max_principle = cfg.monitor_max_principle;
  return sc;
}

void apply_initial(Solver& solver, const RunConfig& cfg, const Mesh& mesh) {
  if (cfg.preset.empty()) throw ConfigError("[initial] preset is required");
  if (cfg.preset == "sod") {
    solver.set_euler_initial([&](const Vec3& x) -> EulerPrimitive {
      if (x.x < cfg.step_position) return {1.0, Vec3{0, 0, 0}, 1.0};
      return {0.125, Vec3{0, 0, 0}, 0.1};
    });
  } else if (cfg.preset == "test2") {
    solver.set_euler_initial([&](const Vec3& x) -> EulerPrimitive {
      if (x.x < cfg.step_position) return {1.0, Vec3{-2, 0, 0}, 0.4};
      return {1.0, Vec3{2, 0, 0}, 0.4};
    });
  } else if (cfg.preset == "blast") {
    Vec3 center;
    for (int a = 0; a < mesh.dim; ++a) {
      double lo = 1e300, hi = -1e300;
      for (const Vec3& v : mesh.vertices) {
        lo = std::min(lo, v[a]);
        hi = std::max(hi, v[a]);
      }
      if (a == 0) center.x = 0.5 * (lo + hi);
      if (a == 1) center.y = 0.5 * (lo + hi);
      if (a == 2) center.z = 0.5 * (lo + hi);
    }
    const double R = cfg.blast_gas_constant;
    solver.set_euler_initial([&, center](const Vec3& x) -> EulerPrimitive {
      const double r = (x - center).norm();
      const double T = r <= cfg.blast_core_radius ? cfg.blast_core_temperature
                                                  : cfg.blast_ambient_temperature;
      return {cfg.blast_density, Vec3{0, 0, 0}, cfg.blast_density * R * T};
    });
  } else if (cfg.preset == "advected_profile") {
    double ext[3] = {0, 0, 0};
    for (int a = 0; a < mesh.dim; ++a) {
      double lo = 1e300, hi = -1e300;
      for (const Vec3& v : mesh.vertices) {
        lo = std::min(lo, v[a]);
        hi = std::max(hi, v[a]);
      }
      ext[a] = hi - lo;
    }
    const int dim = mesh.dim;
    solver.set_scalar_initial([=, &cfg](const Vec3& x) {
      double s = cfg.profile_amplitude;
      s *= std::sin(2.0 * M_PI * x.x / ext[0]);
      s *= std::sin(2.0 * M_PI * x.y / ext[1]);
      if (dim == 3) s *= std::sin(2.0 * M_PI * x.z / ext[2]);
      return cfg.profile_mean + s;
    });
  } else if (cfg.preset == "step") {
    const Vec3 n = unit(cfg.step_normal);
    solver.set_scalar_initial([&, n](const Vec3& x) {
      return dot(x, n) < cfg.step_position ? cfg.value_left : cfg.value_right;
    });
  } else {
    throw ConfigError("unknown preset '" + cfg.preset + "'");
  }
}

}  // namespace vcfv
