#include "vcfv/studies.hpp"

#include <algorithm>
#include <cmath>

#include "vcfv/output.hpp"
#include "vcfv/riemann_exact.hpp"

namespace vcfv {

ConvergenceResult advection_convergence(ReconScheme scheme, bool limited,
                                        const std::vector<int>& levels, InterpScheme interp,
                                        double t_end) {
  const Vec3 velocity{1.0, 0.5, 0.0};
  auto profile = [](const Vec3& x) {
    return 1.0 + 0.5 * std::sin(2.0 * M_PI * x.x) * std::sin(2.0 * M_PI * x.y);
  };
  const ScalarModel model{ScalarKind::advection, velocity, Vec3{1, 0, 0}};
  const ScalarExact exact(model, profile, Vec3{1.0, 1.0, 0.0});

  auto run_level = [&](int n) {
    BoxSpec spec;
    spec.dim = 2;
    spec.extents = {1.0, 1.0, 1.0};
    spec.cells = {n, n, 1};
    spec.split = BoxSplit::alternating;
    spec.periodic = {true, true, false};
    const Mesh mesh = generate_box(spec);

    SolverConfig sc;
    sc.is_euler = false;
    sc.scalar = model;
    sc.interp = interp;
    sc.recon = ReconConfig::for_dimension(scheme, limited, 2);
    sc.flux = FluxKind::scalar_upwind;
    Solver solver(mesh, sc, {});
    solver.set_scalar_initial(profile);

    TimeControls tc;
    tc.cfl = 0.4;
    tc.t_end = t_end;
    tc.integrator = Integrator::ssprk3;
    solver.run(tc);

    ConvergenceLevel lvl;
    lvl.n = n;
    lvl.h = 1.0 / n;
    double l1 = 0.0, linf = 0.0, vol = 0.0;
    const std::vector<double>& u = solver.cell_states();
    for (int i = 0; i < mesh.n_cells(); ++i) {
      const double err = std::abs(u[i] - exact(mesh.cells[i].centroid, solver.time()));
      l1 += mesh.cells[i].measure * err;
      vol += mesh.cells[i].measure;
      linf = std::max(linf, err);
    }
    lvl.l1 = l1 / vol;
    lvl.linf = linf;
    return lvl;
  };
  return convergence_study(levels, run_level);
}

ShockTubeResult run_shock_tube(const Prim1D& left, const Prim1D& right, double t_end,
                               ReconScheme recon, FluxKind flux, int n_axial,
                               int probe_samples) {
  BoxSpec spec;
  spec.dim = 3;
  spec.extents = {1.0, 0.1, 0.1};
  spec.cells = {n_axial, 4, 4};
  spec.split = BoxSplit::alternating;
  const Mesh mesh = generate_box(spec);

  SolverConfig sc;
  sc.is_euler = true;
  sc.interp = InterpScheme::consistent_shepard;
  sc.recon = ReconConfig::for_dimension(recon, true, 3);
  sc.flux = flux;

  std::map<std::string, BoundaryCondition> bcs;
  bcs["xmin"] = {BCKind::transmissive, {}, 0.0};
  bcs["xmax"] = {BCKind::transmissive, {}, 0.0};
  BoundaryCondition wall;
  wall.kind = BCKind::slip_wall;
  bcs["ymin"] = bcs["ymax"] = bcs["zmin"] = bcs["zmax"] = wall;

  Solver solver(mesh, sc, bcs);
  solver.set_euler_initial([&](const Vec3& x) -> EulerPrimitive {
    const Prim1D& s = x.x < 0.5 ? left : right;
    return {s.rho, Vec3{s.u, 0, 0}, s.p};
  });

  TimeControls tc;
  tc.cfl = 0.4;
  tc.t_end = t_end;
  tc.integrator = Integrator::ssprk3;
  solver.run(tc);

  const RiemannSolution exact = exact_riemann(left, right, GasModel{1.4});

  ShockTubeResult out;
  out.steps = solver.step_count();
  out.min_density = solver.monitors().min_density;
  out.min_pressure = solver.monitors().min_pressure;

  const Snapshot snap = make_snapshot(solver);
  LineProbeSpec probe;
  probe.origin = {0.0, 0.05, 0.05};
  probe.direction = {1, 0, 0};
  probe.length = 1.0;
  probe.samples = probe_samples;

  const std::vector<double>* rho = nullptr;
  for (const auto& [name, data] : snap.scalars)
    if (name == "density") rho = &data;

  double ex_min = 1e300, ex_max = -1e300;
  const double ds = probe.length / (probe.samples - 1);
  for (int k = 0; k < probe.samples; ++k) {
    const double x = ds * k;
    const int ci = nearest_cell(mesh, probe.origin + x * probe.direction);
    const double rho_n = (*rho)[ci];
    const double rho_e = exact.sample((x - 0.5) / t_end).rho;
    out.x.push_back(x);
    out.rho_numeric.push_back(rho_n);
    out.rho_exact.push_back(rho_e);
    out.l1_density += std::abs(rho_n - rho_e) * ds;
    ex_min = std::min(ex_min, rho_e);
    ex_max = std::max(ex_max, rho_e);
  }
  for (double v : out.rho_numeric)
    out.overshoot = std::max({out.overshoot, v - ex_max, ex_min - v});
  out.overshoot = std::max(out.overshoot, 0.0);
  return out;
}

StepAdvectionResult run_step_advection(ReconScheme recon, bool limited, int n, long steps,
                                       double cfl, double perturb, std::uint64_t seed) {
  BoxSpec spec;
  spec.dim = 2;
  spec.extents = {1.0, 1.0, 1.0};
  spec.cells = {n, n, 1};
  spec.split = BoxSplit::alternating;
  spec.periodic = {true, true, false};
  spec.perturb = perturb;
  spec.perturb_seed = seed;
  const Mesh mesh = generate_box(spec);

  SolverConfig sc;
  sc.is_euler = false;
  sc.scalar = {ScalarKind::advection, Vec3{1.0, 0.5, 0.0}, Vec3{1, 0, 0}};
  sc.interp = InterpScheme::consistent_shepard;
  sc.recon = ReconConfig::for_dimension(recon, limited, 2);
  sc.flux = FluxKind::scalar_upwind;
  sc.monitor_max_principle = true;

  Solver solver(mesh, sc, {});
  solver.set_scalar_initial([](const Vec3& x) { return x.x < 0.5 ? 1.0 : 0.0; });

  TimeControls tc;
  tc.cfl = cfl;
  tc.t_end = 1e30;
  tc.max_steps = steps;
  tc.integrator = Integrator::forward_euler;
  solver.run(tc);

  StepAdvectionResult out;
  out.violations = static_cast<long>(solver.monitors().max_principle_violations.size());
  out.negative_weight_vertices =
      solver.stencils().diagnostics.n_vertices_with_negative_weight;
  out.steps = solver.step_count();
  const auto& u = solver.cell_states();
  out.u_min = *std::min_element(u.begin(), u.end());
  out.u_max = *std::max_element(u.begin(), u.end());
  return out;
}

BlastStudyResult run_blast_study(int n_per_side, double cfl0, int n_snapshots) {
  BoxSpec spec;
  spec.dim = 3;
  spec.extents = {81.0, 81.0, 81.0};
  spec.cells = {n_per_side, n_per_side, n_per_side};
  spec.split = BoxSplit::alternating;
  const Mesh mesh = generate_box(spec);

  SolverConfig sc;
  sc.is_euler = true;
  sc.interp = InterpScheme::consistent_shepard;
  sc.recon = ReconConfig::for_dimension(ReconScheme::upwind, true, 3);
  sc.flux = FluxKind::kfvs;

  std::map<std::string, BoundaryCondition> bcs;
  BoundaryCondition wall;
  wall.kind = BCKind::slip_wall;
  for (const char* tag : {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"}) bcs[tag] = wall;

  Solver solver(mesh, sc, bcs);
  const Vec3 center{40.5, 40.5, 40.5};
  const double R_gas = 287.0;
  solver.set_euler_initial([&](const Vec3& x) -> EulerPrimitive {
    const double T = (x - center).norm() <= 5.0 ? 8.1e7 : 298.0;
    return {1.228, Vec3{0, 0, 0}, 1.228 * R_gas * T};
  });

  // fixed step from the initial CFL limit; wave speeds grow by at most
  // ~1.5x over the run, keeping the effective CFL below one
  solver.cfl = cfl0;
  const double dt = solver.compute_time_step();

  RadialProbeSpec probe;
  probe.center = center;
  probe.direction = {1, 0, 0};
  probe.rmax = 39.0;
  probe.samples = 160;

  // march until the similarity solution puts the shock near the boundary:
  // R = (E t^2 / rho)^(1/5) with E the core's excess thermal energy
  const double p_core = 1.228 * R_gas * 8.1e7;
  const double p_amb = 1.228 * R_gas * 298.0;
  const double energy =
      (p_core - p_amb) / 0.4 * (4.0 * M_PI / 3.0) * std::pow(5.0, 3);
  const double t_final = std::sqrt(std::pow(35.0, 5) * 1.228 / energy);
  const long total_steps = static_cast<long>(t_final / dt) + 1;
  const long stride = std::max<long>(1, total_steps / n_snapshots);

  std::vector<RadialProfile> profiles;
  TimeControls tc;
  tc.fixed_dt = dt;
  tc.t_end = t_final;
  tc.max_steps = total_steps + 2;
  tc.integrator = Integrator::ssprk3;
  solver.run(tc, [&](const Solver& s, long step, double /*t*/) {
    if (step > 0 && step % stride == 0)
      profiles.push_back(sample_radial(mesh, make_snapshot(s), probe));
  });

  // keep snapshots whose shock is well separated from both the core and
  // the boundary before fitting
  std::vector<RadialProfile> late;
  for (const RadialProfile& p : profiles) {
    const double R = shock_radius(p);
    if (R > 12.0 && R < 34.0) late.push_back(p);
  }

  BlastStudyResult out;
  out.fit = taylor_radius_check(late);
  out.min_density = solver.monitors().min_density;
  out.min_pressure = solver.monitors().min_pressure;
  out.steps = solver.step_count();
  out.dt = dt;
  return out;
}

}  // namespace vcfv
