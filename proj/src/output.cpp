#include "vcfv/output.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "vcfv/errors.hpp"

namespace vcfv {

namespace {

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
    out << content;
  }
  fs::rename(tmp, target);
}

}  // namespace

Snapshot make_snapshot(const Solver& solver) {
  Snapshot snap;
  snap.time = solver.time();
  snap.step = solver.step_count();
  const int n = solver.mesh().n_cells();
  if (solver.ncomp() == 5) {
    const std::vector<double> prim = solver.primitives();
    std::vector<double> rho(n), p(n);
    std::vector<Vec3> vel(n);
    for (int i = 0; i < n; ++i) {
      rho[i] = prim[static_cast<std::size_t>(i) * 5 + 0];
      vel[i] = {prim[static_cast<std::size_t>(i) * 5 + 1],
                prim[static_cast<std::size_t>(i) * 5 + 2],
                prim[static_cast<std::size_t>(i) * 5 + 3]};
      p[i] = prim[static_cast<std::size_t>(i) * 5 + 4];
    }
    snap.scalars.emplace_back("density", std::move(rho));
    snap.scalars.emplace_back("pressure", std::move(p));
    snap.vectors.emplace_back("velocity", std::move(vel));
  } else {
    std::vector<double> u(solver.cell_states());
    snap.scalars.emplace_back("u", std::move(u));
  }
  return snap;
}

void write_vtk(const Mesh& mesh, const Snapshot& snap, const std::string& path) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# vtk DataFile Version 3.0\n";
  os << "vcfv snapshot step " << snap.step << " time " << snap.time << "\n";
  os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.n_vertices() << " double\n";
  for (const Vec3& v : mesh.vertices) os << v.x << " " << v.y << " " << v.z << "\n";
  const int nv = mesh.cell_vertex_count();
  os << "CELLS " << mesh.n_cells() << " " << mesh.n_cells() * (nv + 1) << "\n";
  for (const Cell& c : mesh.cells) {
    os << nv;
    for (int k = 0; k < nv; ++k) os << " " << c.v[k];
    os << "\n";
  }
  os << "CELL_TYPES " << mesh.n_cells() << "\n";
  const int vtk_type = mesh.dim == 2 ? 5 : 10;  // triangle / tetra
  for (int i = 0; i < mesh.n_cells(); ++i) os << vtk_type << "\n";
  os << "CELL_DATA " << mesh.n_cells() << "\n";
  for (const auto& [name, data] : snap.scalars) {
    if (name.empty()) throw ConfigError("empty field name");
    os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double v : data) os << v << "\n";
  }
  for (const auto& [name, data] : snap.vectors) {
    if (name.empty()) throw ConfigError("empty field name");
    os << "VECTORS " << name << " double\n";
    for (const Vec3& v : data) os << v.x << " " << v.y << " " << v.z << "\n";
  }
  atomic_write(path, os.str());
}

int nearest_cell(const Mesh& mesh, const Vec3& p) {
  int best = 0;
  double best_d = (mesh.cells[0].centroid - p).norm2();
  for (int i = 1; i < mesh.n_cells(); ++i) {
    const double d = (mesh.cells[i].centroid - p).norm2();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

namespace {

std::string probe_csv(const Mesh& mesh, const Snapshot& snap, const Vec3& origin,
                      const Vec3& dir_unit, double length, int samples,
                      const char* coord_name) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << coord_name << ",x,y,z";
  for (const auto& [name, data] : snap.scalars) os << "," << name;
  for (const auto& [name, data] : snap.vectors)
    os << "," << name << "_x," << name << "_y," << name << "_z";
  os << "\n";
  for (int k = 0; k < samples; ++k) {
    const double s = samples == 1 ? 0.0 : length * k / (samples - 1);
    const Vec3 p = origin + s * dir_unit;
    const int ci = nearest_cell(mesh, p);
    os << s << "," << p.x << "," << p.y << "," << p.z;
    for (const auto& [name, data] : snap.scalars) os << "," << data[ci];
    for (const auto& [name, data] : snap.vectors)
      os << "," << data[ci].x << "," << data[ci].y << "," << data[ci].z;
    os << "\n";
  }
  return os.str();
}

}  // namespace

void write_line_probe(const Mesh& mesh, const Snapshot& snap, const LineProbeSpec& probe,
                      const std::string& path) {
  atomic_write(path, probe_csv(mesh, snap, probe.origin, unit(probe.direction),
                               probe.length, probe.samples, "s"));
}

RadialProfile sample_radial(const Mesh& mesh, const Snapshot& snap,
                            const RadialProbeSpec& probe) {
  RadialProfile prof;
  prof.time = snap.time;
  const Vec3 dir = unit(probe.direction);
  const std::vector<double>* pressure = nullptr;
  for (const auto& [name, data] : snap.scalars)
    if (name == "pressure" || (name == "u" && !pressure)) pressure = &data;
  if (!pressure) throw ConfigError("no pressure field in snapshot");
  for (int k = 0; k < probe.samples; ++k) {
    const double r = probe.samples == 1 ? 0.0 : probe.rmax * k / (probe.samples - 1);
    const int ci = nearest_cell(mesh, probe.center + r * dir);
    prof.r.push_back(r);
    prof.p.push_back((*pressure)[ci]);
  }
  return prof;
}

void write_radial_probe(const Mesh& mesh, const Snapshot& snap, const RadialProbeSpec& probe,
                        const std::string& path) {
  atomic_write(path, probe_csv(mesh, snap, probe.center, unit(probe.direction), probe.rmax,
                               probe.samples, "r"));
}

void write_run_summary(const Solver& solver, const MonitorReport& report,
                       const std::string& path) {
  nlohmann::json j;
  j["final_time"] = report.final_time;
  j["steps"] = report.steps;
  j["max_principle_violations"] = report.max_principle_violations.size();
  if (solver.ncomp() == 5) {
    j["min_density"] = report.min_density;
    j["min_pressure"] = report.min_pressure;
  }
  nlohmann::json drift = nlohmann::json::array();
  const auto d = report.conserved_drift();
  for (int c = 0; c < solver.ncomp(); ++c) {
    const double scale = std::max(std::abs(report.initial_total[c]), 1e-300);
    drift.push_back(d[c] / scale);
  }
  j["conserved_drift_relative"] = drift;
  atomic_write(path, j.dump(2) + "\n");
}

RunOutputs run_case(const RunConfig& cfg) {
  const Mesh mesh = build_mesh(cfg);
  Solver solver(mesh, make_solver_config(cfg, mesh.dim), cfg.bcs);
  apply_initial(solver, cfg, mesh);

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  RunOutputs outputs;

  int snap_index = 0;
  double next_snap = 0.0;
  long last_emitted_step = -1;
  auto emit = [&](const Solver& s) {
    if (s.step_count() == last_emitted_step) return;
    last_emitted_step = s.step_count();
    const Snapshot snap = make_snapshot(s);
    std::ostringstream name;
    name << cfg.output_dir << "/snap_" << std::setw(4) << std::setfill('0') << snap_index;
    write_vtk(mesh, snap, name.str() + ".vtk");
    outputs.snapshot_files.push_back(name.str() + ".vtk");
    if (cfg.line_probe)
      write_line_probe(mesh, snap, *cfg.line_probe, name.str() + "_line.csv");
    if (cfg.radial_probe)
      write_radial_probe(mesh, snap, *cfg.radial_probe, name.str() + "_radial.csv");
    ++snap_index;
  };

  solver.run(cfg.time, [&](const Solver& s, long /*step*/, double t) {
    const bool due = cfg.snapshot_interval > 0.0 && t >= next_snap - 1e-14;
    if (t == 0.0 || due) {
      emit(s);
      if (cfg.snapshot_interval > 0.0)
        while (next_snap <= t + 1e-14) next_snap += cfg.snapshot_interval;
    }
  });
  emit(solver);  // final state

  write_run_summary(solver, solver.monitors(), cfg.output_dir + "/run_summary.json");
  {
    std::ostringstream os;
    os << solver.monitors().to_text(solver.ncomp());
    atomic_write(cfg.output_dir + "/monitor_report.txt", os.str());
  }
  outputs.steps = solver.step_count();
  outputs.final_time = solver.time();
  return outputs;
}

}  // namespace vcfv
