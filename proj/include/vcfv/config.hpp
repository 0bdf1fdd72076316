#ifndef VCFV_CONFIG_HPP
#define VCFV_CONFIG_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "vcfv/mesh.hpp"
#include "vcfv/solver.hpp"

namespace vcfv {

enum class MeshSource { box, gmsh };

struct LineProbeSpec {
  Vec3 origin;
  Vec3 direction{1, 0, 0};
  double length = 1.0;
  int samples = 100;
};

struct RadialProbeSpec {
  Vec3 center;
  Vec3 direction{1, 0, 0};
  double rmax = 1.0;
  int samples = 100;
};

/// Full case description parsed from the key-value config format.
struct RunConfig {
  // model
  bool is_euler = false;
  GasModel gas;
  ScalarModel scalar;

  // mesh
  MeshSource mesh_source = MeshSource::box;
  std::string mesh_file;
  BoxSpec box;

  // schemes
  InterpScheme interp = InterpScheme::consistent_shepard;
  ReconScheme recon = ReconScheme::upwind;
  bool limited = true;
  double jameson_q = 2.0;
  double jameson_eps = 0.05;
  std::optional<FluxKind> flux;

  // initial condition
  std::string preset;
  double step_position = 0.5;
  Vec3 step_normal{1, 0, 0};
  double value_left = 1.0;
  double value_right = 0.0;
  double profile_mean = 1.0;
  double profile_amplitude = 0.5;
  double blast_gas_constant = 287.0;  // converts the preset's temperatures to pressure
  double blast_core_radius = 5.0;
  double blast_core_temperature = 8.1e7;
  double blast_ambient_temperature = 298.0;
  double blast_density = 1.228;

  // boundaries
  std::map<std::string, BoundaryCondition> bcs;

  // time
  TimeControls time;
  bool monitor_max_principle = false;

  // output
  std::string output_dir = "out";
  double snapshot_interval = 0.0;  // 0: initial + final only
  std::optional<LineProbeSpec> line_probe;
  std::optional<RadialProbeSpec> radial_probe;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& name = "<config>");

Mesh build_mesh(const RunConfig& cfg);
SolverConfig make_solver_config(const RunConfig& cfg, int dim);

/// Apply the configured initial condition (preset) to the solver.
void apply_initial(Solver& solver, const RunConfig& cfg, const Mesh& mesh);

}  // namespace vcfv

#endif
