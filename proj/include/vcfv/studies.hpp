#ifndef VCFV_STUDIES_HPP
#define VCFV_STUDIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vcfv/interp.hpp"
#include "vcfv/recon.hpp"
#include "vcfv/solver.hpp"
#include "vcfv/verify.hpp"

namespace vcfv {

/// Periodic 2-D advection of a smooth profile; L1 error against the
/// translated exact solution per refinement level.
ConvergenceResult advection_convergence(ReconScheme scheme, bool limited,
                                        const std::vector<int>& levels,
                                        InterpScheme interp = InterpScheme::consistent_shepard,
                                        double t_end = 0.5);

struct ShockTubeResult {
  double l1_density = 0.0;   // integral of |rho - rho_exact| along the centerline
  double overshoot = 0.0;    // density excursion beyond the exact solution's range
  double min_density = 0.0;  // over the whole run
  double min_pressure = 0.0;
  long steps = 0;
  std::vector<double> x, rho_numeric, rho_exact;
};

/// 3-D channel shock tube (square cross-section, ~n_axial cells along the
/// axis), limited reconstruction, compared against the exact Riemann
/// solution along the centerline.
ShockTubeResult run_shock_tube(const Prim1D& left, const Prim1D& right, double t_end,
                               ReconScheme recon, FluxKind flux, int n_axial = 100,
                               int probe_samples = 201);

struct StepAdvectionResult {
  long violations = 0;
  int negative_weight_vertices = 0;
  long steps = 0;
  double u_min = 0.0, u_max = 0.0;
};

/// Step data advected on a perturbed periodic 2-D box with forward Euler;
/// the runtime monitor records maximum-principle violations.
StepAdvectionResult run_step_advection(ReconScheme recon, bool limited, int n = 32,
                                       long steps = 500, double cfl = 0.4,
                                       double perturb = 0.12,
                                       std::uint64_t seed = 20240915);

struct BlastStudyResult {
  TaylorFit fit;
  double min_density = 0.0;
  double min_pressure = 0.0;
  long steps = 0;
  double dt = 0.0;
};

/// Coarse Taylor blast: spherical hot core in a cube, KFVS + limited upwind,
/// fixed time step chosen from the initial CFL limit. Radial pressure
/// profiles are collected over time and fitted against R ~ t^(2/5).
BlastStudyResult run_blast_study(int n_per_side = 26, double cfl0 = 0.4,
                                 int n_snapshots = 12);

}  // namespace vcfv

#endif
