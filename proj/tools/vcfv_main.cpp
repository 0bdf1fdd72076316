// Command-line front end: configured runs plus the bundled verification
// drivers (Riemann oracle, reconstruction bound audit, convergence study,
// Taylor blast) and mesh/interpolation reports.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vcfv/config.hpp"
#include "vcfv/errors.hpp"
#include "vcfv/gmsh_io.hpp"
#include "vcfv/output.hpp"
#include "vcfv/riemann_exact.hpp"
#include "vcfv/studies.hpp"
#include "vcfv/verify.hpp"

namespace {

using namespace vcfv;

int cmd_run(const std::string& config_path, const std::string& output_override) {
  RunConfig cfg = parse_config(config_path);
  if (!output_override.empty()) cfg.output_dir = output_override;
  const RunOutputs out = run_case(cfg);
  std::cout << "run finished: " << out.steps << " steps, t = " << out.final_time << "\n";
  std::cout << "outputs in " << cfg.output_dir << " (" << out.snapshot_files.size()
            << " snapshots)\n";
  return 0;
}

int cmd_verify_riemann() {
  const GasModel gas;
  const RiemannSolution sod = exact_riemann({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, gas);
  std::printf("Sod star state: p* = %.6f, u* = %.6f (%d iterations)\n", sod.p_star,
              sod.u_star, sod.iterations);
  const bool ok = std::abs(sod.p_star - 0.30313) < 5e-6 && std::abs(sod.u_star - 0.92745) < 5e-6;
  std::printf("%s riemann: star state matches the frozen Sod reference\n",
              ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_verify_bounds(int dim, int trials, std::uint64_t seed) {
  bool all_ok = true;
  for (int d : dim == 0 ? std::vector<int>{2, 3} : std::vector<int>{dim}) {
    const BoundAuditResult res = quadratic_bound_audit(d, trials, seed);
    const double tol = 1.0 + 1e-9;
    const bool ok = res.worst_frink <= tol && res.worst_upwind <= tol;
    all_ok &= ok;
    std::printf("%s bounds %d-D: max ratio frink %.12f (C=%g), upwind %.12f (C=%g), %d trials\n",
                ok ? "PASS" : "FAIL", d, res.worst_frink, frink_bound_constant(d),
                res.worst_upwind, upwind_bound_constant(d), trials);
  }
  return all_ok ? 0 : 1;
}

int cmd_verify_convergence() {
  const std::vector<int> levels{16, 32, 64};
  bool all_ok = true;
  for (const auto& [name, scheme, lo, hi] :
       {std::tuple{"frink", ReconScheme::frink, 1.8, 10.0},
        std::tuple{"upwind", ReconScheme::upwind, 1.8, 10.0},
        std::tuple{"first_order", ReconScheme::first_order, 0.8, 1.2}}) {
    const ConvergenceResult res = advection_convergence(scheme, false, levels);
    const double order = res.orders.back();
    const bool ok = order >= lo && order <= hi;
    all_ok &= ok;
    std::printf("%s convergence %s: observed order %.3f (want [%.1f, %.1f])\n",
                ok ? "PASS" : "FAIL", name, order, lo, hi);
    std::cout << res.to_csv();
  }
  return all_ok ? 0 : 1;
}

int cmd_verify_blast(int n, double cfl, int snapshots) {
  std::printf("running coarse blast study: %d^3 hexes (%d tets), cfl0 %.2f ...\n", n,
              6 * n * n * n, cfl);
  const BlastStudyResult res = run_blast_study(n, cfl, snapshots);
  if (!res.fit.valid) {
    std::printf("FAIL blast: no valid Taylor fit (insufficient shock snapshots)\n");
    return 1;
  }
  const bool ok = res.fit.slope >= 0.35 && res.fit.slope <= 0.45;
  std::printf("blast: %ld steps at dt %.3e, min rho %.3e, min p %.3e\n", res.steps, res.dt,
              res.min_density, res.min_pressure);
  for (std::size_t i = 0; i < res.fit.times.size(); ++i)
    std::printf("  t %.4e  R %.3f\n", res.fit.times[i], res.fit.radii[i]);
  std::printf("%s blast: log R vs log t slope %.4f (theory 0.4, want [0.35, 0.45])\n",
              ok ? "PASS" : "FAIL", res.fit.slope);
  return ok ? 0 : 1;
}

int cmd_mesh_info(const std::string& path) {
  const Mesh mesh = load_gmsh(path);
  std::cout << "dimension " << mesh.dim << ", " << mesh.n_vertices() << " vertices, "
            << mesh.n_cells() << " cells, " << mesh.n_faces() << " faces\n";
  std::cout << format_report(validate_mesh(mesh));
  return 0;
}

int cmd_interp_report(const std::string& path, bool csv) {
  const Mesh mesh = load_gmsh(path);
  if (csv) std::cout << "scheme,n_negative,min_weight,min_det,n_fallback\n";
  for (InterpScheme s : {InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
    const StencilSet set = build_all_stencils(mesh, s);
    if (csv)
      std::cout << set.diagnostics.to_csv_row(s) << "\n";
    else
      std::cout << set.diagnostics.to_text(s) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertex-centroid finite volume solver"};
  app.require_subcommand(1);

  std::string config_path, output_dir, mesh_path;
  int dim = 0, trials = 10000, blast_n = 26, blast_snaps = 12;
  std::uint64_t seed = 7;
  double blast_cfl = 0.4;
  bool csv = false;

  auto* run = app.add_subcommand("run", "run a configured case");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--output", output_dir, "override output directory");

  app.add_subcommand("verify-riemann", "exact Riemann solver against the Sod reference");

  auto* bounds = app.add_subcommand("verify-bounds", "reconstruction error-bound audit");
  bounds->add_option("--dim", dim, "2 or 3 (default: both)");
  bounds->add_option("--trials", trials, "random trials per scheme");
  bounds->add_option("--seed", seed, "random seed");

  app.add_subcommand("verify-convergence", "advection convergence study");

  auto* blast = app.add_subcommand("verify-blast", "coarse Taylor blast radius check");
  blast->add_option("--cells", blast_n, "hexes per side");
  blast->add_option("--cfl", blast_cfl, "initial CFL for the fixed time step");
  blast->add_option("--snapshots", blast_snaps, "radial profile snapshots");

  auto* minfo = app.add_subcommand("mesh-info", "load a mesh and report diagnostics");
  minfo->add_option("mesh", mesh_path, "MSH 2.2 file")->required();

  auto* ireport = app.add_subcommand("interp-report", "interpolation weight diagnostics");
  ireport->add_option("mesh", mesh_path, "MSH 2.2 file")->required();
  ireport->add_flag("--csv", csv, "emit CSV rows");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("run")) return cmd_run(config_path, output_dir);
    if (app.got_subcommand("verify-riemann")) return cmd_verify_riemann();
    if (app.got_subcommand("verify-bounds")) return cmd_verify_bounds(dim, trials, seed);
    if (app.got_subcommand("verify-convergence")) return cmd_verify_convergence();
    if (app.got_subcommand("verify-blast"))
      return cmd_verify_blast(blast_n, blast_cfl, blast_snaps);
    if (app.got_subcommand("mesh-info")) return cmd_mesh_info(mesh_path);
    if (app.got_subcommand("interp-report")) return cmd_interp_report(mesh_path, csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
