#ifndef VCFV_SOLVER_HPP
#define VCFV_SOLVER_HPP

#include <array>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcfv/flux.hpp"
#include "vcfv/interp.hpp"
#include "vcfv/mesh.hpp"
#include "vcfv/physics.hpp"
#include "vcfv/recon.hpp"

namespace vcfv {

enum class BCKind { slip_wall, supersonic_inflow, transmissive, dirichlet_scalar };

struct BoundaryCondition {
  BCKind kind = BCKind::transmissive;
  EulerPrimitive euler_state;  // supersonic_inflow
  double scalar_value = 0.0;   // dirichlet_scalar
};

enum class Integrator { forward_euler, ssprk3 };

struct TimeControls {
  double cfl = 0.4;
  double t_end = 0.0;
  std::optional<double> fixed_dt;
  Integrator integrator = Integrator::ssprk3;
  long max_steps = 1000000;
};

struct MaxPrincipleViolation {
  long step = 0;
  int cell = -1;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct MonitorReport {
  std::vector<MaxPrincipleViolation> max_principle_violations;
  std::array<double, 5> initial_total{};
  std::array<double, 5> final_total{};
  std::array<double, 5> boundary_flux_integral{};
  double min_density = std::numeric_limits<double>::max();
  double min_pressure = std::numeric_limits<double>::max();
  long steps = 0;
  double final_time = 0.0;

  /// final - initial + integrated boundary flux, per component.
  std::array<double, 5> conserved_drift() const;
  std::string to_text(int ncomp) const;
};

/// Shu-Osher 3-stage SSP Runge-Kutta step. rhs(u) returns du/dt; hook is
/// called with the state after every stage (positivity checks live there).
/// The three rhs evaluations enter the total update with weights
/// dt * (1/6, 1/6, 2/3), which stage_weight exposes for flux bookkeeping.
template <class Rhs, class Hook>
void ssprk3_step(std::vector<double>& u, double dt, Rhs&& rhs, Hook&& hook) {
  const std::size_t n = u.size();
  std::vector<double> k = rhs(u);
  std::vector<double> u1(n);
  for (std::size_t i = 0; i < n; ++i) u1[i] = u[i] + dt * k[i];
  hook(u1);
  k = rhs(u1);
  std::vector<double> u2(n);
  for (std::size_t i = 0; i < n; ++i)
    u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k[i]);
  hook(u2);
  k = rhs(u2);
  for (std::size_t i = 0; i < n; ++i)
    u[i] = (1.0 / 3.0) * u[i] + (2.0 / 3.0) * (u2[i] + dt * k[i]);
  hook(u);
}

inline double ssprk3_stage_weight(int eval_index) {
  return eval_index == 2 ? 2.0 / 3.0 : 1.0 / 6.0;
}

struct SolverConfig {
  bool is_euler = false;
  GasModel gas;
  ScalarModel scalar;
  InterpScheme interp = InterpScheme::consistent_shepard;
  ReconConfig recon;
  FluxKind flux = FluxKind::scalar_upwind;
  bool monitor_max_principle = false;
};

struct AssembleResult {
  std::vector<double> residual;           // -sum of face fluxes, cell-major
  std::array<double, 5> boundary_flux{};  // sum of H over boundary faces
  std::vector<double> vertex_values;      // interpolated stage values
  std::vector<double> face_exterior;      // neighbour/ghost value per face (scalar runs)
};

/// Semi-discrete vertex-centroid scheme on a fixed mesh: interpolation to
/// vertices, per-face reconstruction, numerical flux, explicit time
/// stepping under CFL control, and runtime monitors.
class Solver {
 public:
  Solver(const Mesh& mesh, const SolverConfig& cfg,
         std::map<std::string, BoundaryCondition> bcs);

  int ncomp() const { return ncomp_; }
  double time() const { return time_; }
  long step_count() const { return step_; }
  const Mesh& mesh() const { return mesh_; }
  const StencilSet& stencils() const { return stencils_; }
  const MonitorReport& monitors() const { return monitor_; }
  const std::vector<double>& cell_states() const { return state_; }

  void set_scalar_initial(const std::function<double(const Vec3&)>& f);
  void set_euler_initial(const std::function<EulerPrimitive(const Vec3&)>& f);

  /// Euler: primitive (rho, ux, uy, uz, p) per cell; scalar: the value.
  std::vector<double> primitives() const;

  AssembleResult assemble_residual(const std::vector<double>& state) const;
  double compute_time_step() const;
  void step_forward_euler(double dt);
  void step_ssprk3(double dt);

  using StepCallback = std::function<void(const Solver&, long step, double t)>;
  /// Advance to t_end (or max_steps), recording monitors. The callback runs
  /// after every accepted step and once for the initial state (step 0).
  void run(const TimeControls& controls, const StepCallback& cb = nullptr);

  double cfl = 0.4;  // used by compute_time_step

 private:
  std::vector<double> to_primitive(const std::vector<double>& state) const;
  double ghost_scalar(const Face& f, double interior) const;
  EulerPrimitive ghost_euler(const Face& f, const EulerPrimitive& interior) const;
  void validate_state(const std::vector<double>& state, const char* where);
  void check_max_principle(const std::vector<double>& before,
                           const std::vector<double>& after,
                           const AssembleResult& asmres);
  void record_totals(std::array<double, 5>& out) const;

  const Mesh& mesh_;
  SolverConfig cfg_;
  StencilSet stencils_;
  std::vector<const BoundaryCondition*> bc_of_face_;
  std::map<std::string, BoundaryCondition> bcs_;
  int ncomp_ = 1;
  std::vector<double> state_;
  double time_ = 0.0;
  long step_ = 0;
  MonitorReport monitor_;
};

}  // namespace vcfv

#endif
