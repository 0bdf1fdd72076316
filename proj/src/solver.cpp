#include "vcfv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcfv/errors.hpp"

namespace vcfv {

namespace {

// compensated accumulation for the conservation totals
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

EulerPrimitive prim_from(const double* q) {
  return {q[0], Vec3{q[1], q[2], q[3]}, q[4]};
}

}  // namespace

std::array<double, 5> MonitorReport::conserved_drift() const {
  std::array<double, 5> d{};
  for (int k = 0; k < 5; ++k)
    d[k] = final_total[k] - initial_total[k] + boundary_flux_integral[k];
  return d;
}

std::string MonitorReport::to_text(int ncomp) const {
  std::ostringstream os;
  os << "steps: " << steps << ", final time: " << final_time << "\n";
  os << "max principle violations: " << max_principle_violations.size() << "\n";
  const auto drift = conserved_drift();
  os << "conserved drift:";
  for (int k = 0; k < ncomp; ++k) {
    const double scale = std::max(std::abs(initial_total[k]), 1e-300);
    os << " " << drift[k] / scale;
  }
  os << "\n";
  if (min_density != std::numeric_limits<double>::max())
    os << "min density: " << min_density << ", min pressure: " << min_pressure << "\n";
  return os.str();
}

Solver::Solver(const Mesh& mesh, const SolverConfig& cfg,
               std::map<std::string, BoundaryCondition> bcs)
    : mesh_(mesh), cfg_(cfg), bcs_(std::move(bcs)) {
  ncomp_ = cfg_.is_euler ? 5 : 1;
  stencils_ = build_all_stencils(mesh_, cfg_.interp);
  state_.assign(static_cast<std::size_t>(mesh_.n_cells()) * ncomp_, 0.0);

  bc_of_face_.assign(mesh_.n_faces(), nullptr);
  for (int fi = 0; fi < mesh_.n_faces(); ++fi) {
    const Face& f = mesh_.faces[fi];
    if (f.right != -1) continue;
    const std::string name =
        f.boundary_tag >= 0 ? mesh_.tag_names[f.boundary_tag] : std::string("untagged");
    auto it = bcs_.find(name);
    if (it == bcs_.end()) it = bcs_.find("default");
    if (it == bcs_.end())
      throw ConfigError("no boundary condition for tag '" + name + "'");
    const BoundaryCondition& bc = it->second;
    if (!cfg_.is_euler &&
        (bc.kind == BCKind::slip_wall || bc.kind == BCKind::supersonic_inflow))
      throw ConfigError("boundary kind invalid for scalar model on tag '" + name + "'");
    if (cfg_.is_euler && bc.kind == BCKind::dirichlet_scalar)
      throw ConfigError("dirichlet_scalar invalid for Euler model on tag '" + name + "'");
    bc_of_face_[fi] = &bc;
  }
  cfl = 0.4;
}

void Solver::set_scalar_initial(const std::function<double(const Vec3&)>& f) {
  for (int i = 0; i < mesh_.n_cells(); ++i) state_[i] = f(mesh_.cells[i].centroid);
  record_totals(monitor_.initial_total);
  monitor_.final_total = monitor_.initial_total;
}

void Solver::set_euler_initial(const std::function<EulerPrimitive(const Vec3&)>& f) {
  for (int i = 0; i < mesh_.n_cells(); ++i) {
    const EulerConserved U = prim_to_cons(f(mesh_.cells[i].centroid), cfg_.gas);
    double* q = &state_[static_cast<std::size_t>(i) * 5];
    q[0] = U.rho;
    q[1] = U.m.x;
    q[2] = U.m.y;
    q[3] = U.m.z;
    q[4] = U.E;
  }
  record_totals(monitor_.initial_total);
  monitor_.final_total = monitor_.initial_total;
}

void Solver::record_totals(std::array<double, 5>& out) const {
  for (int c = 0; c < ncomp_; ++c) {
    KahanSum sum;
    for (int i = 0; i < mesh_.n_cells(); ++i)
      sum.add(mesh_.cells[i].measure * state_[static_cast<std::size_t>(i) * ncomp_ + c]);
    out[c] = sum.s;
  }
}

std::vector<double> Solver::to_primitive(const std::vector<double>& state) const {
  if (!cfg_.is_euler) return state;
  std::vector<double> prim(state.size());
  for (int i = 0; i < mesh_.n_cells(); ++i) {
    const double* q = &state[static_cast<std::size_t>(i) * 5];
    EulerPrimitive W;
    try {
      W = cons_to_prim({q[0], Vec3{q[1], q[2], q[3]}, q[4]}, cfg_.gas);
    } catch (const PositivityError& e) {
      std::ostringstream os;
      os << e.what() << " in cell " << i << " at t=" << time_ << " step " << step_;
      throw PositivityError(os.str());
    }
    double* w = &prim[static_cast<std::size_t>(i) * 5];
    w[0] = W.rho;
    w[1] = W.u.x;
    w[2] = W.u.y;
    w[3] = W.u.z;
    w[4] = W.p;
  }
  return prim;
}

std::vector<double> Solver::primitives() const { return to_primitive(state_); }

double Solver::ghost_scalar(const Face& f, double interior) const {
  const BoundaryCondition& bc = *bc_of_face_[&f - mesh_.faces.data()];
  switch (bc.kind) {
    case BCKind::dirichlet_scalar: return bc.scalar_value;
    case BCKind::transmissive: return interior;
    default: break;
  }
  throw ConfigError("unsupported scalar boundary kind");
}

EulerPrimitive Solver::ghost_euler(const Face& f, const EulerPrimitive& in) const {
  const BoundaryCondition& bc = *bc_of_face_[&f - mesh_.faces.data()];
  switch (bc.kind) {
    case BCKind::slip_wall: {
      const Vec3 nu = f.normal / f.measure;
      return {in.rho, in.u - 2.0 * dot(in.u, nu) * nu, in.p};
    }
    case BCKind::supersonic_inflow:
      return bc.euler_state;
    case BCKind::transmissive:
      return in;
    default:
      break;
  }
  throw ConfigError("unsupported Euler boundary kind");
}

AssembleResult Solver::assemble_residual(const std::vector<double>& state) const {
  AssembleResult out;
  const int nc = ncomp_;
  out.residual.assign(state.size(), 0.0);
  const std::vector<double> prim = to_primitive(state);

  out.vertex_values.assign(static_cast<std::size_t>(mesh_.n_vertices()) * nc, 0.0);
  interpolate_field(stencils_.stencils, prim, nc, out.vertex_values);
  if (!cfg_.is_euler) out.face_exterior.assign(mesh_.n_faces(), 0.0);

  for (int fi = 0; fi < mesh_.n_faces(); ++fi) {
    const Face& f = mesh_.faces[fi];
    const bool boundary = f.right == -1;
    const double* qi = &prim[static_cast<std::size_t>(f.left) * nc];

    // ghost state (exterior side of boundary faces)
    EulerPrimitive ghostW;
    double ghost_u = 0.0;
    if (boundary) {
      if (cfg_.is_euler)
        ghostW = ghost_euler(f, prim_from(qi));
      else
        ghost_u = ghost_scalar(f, qi[0]);
    }

    double h_face = mesh_.cells[f.left].h;
    if (!boundary) h_face = 0.5 * (h_face + mesh_.cells[f.right].h);

    // reconstruct both face states, component-wise
    std::array<double, 5> up{}, um{};
    for (int c = 0; c < nc; ++c) {
      FaceValues fv;
      fv.boundary = boundary;
      fv.h_face = h_face;
      fv.U_i = qi[c];
      fv.V_ij = out.vertex_values[static_cast<std::size_t>(f.opp_left) * nc + c];
      if (boundary) {
        fv.U_j = cfg_.is_euler
                     ? (c == 0 ? ghostW.rho
                               : (c == 4 ? ghostW.p
                                         : (c == 1 ? ghostW.u.x
                                                   : (c == 2 ? ghostW.u.y : ghostW.u.z))))
                     : ghost_u;
      } else {
        fv.U_j = prim[static_cast<std::size_t>(f.right) * nc + c];
        fv.V_ji = out.vertex_values[static_cast<std::size_t>(f.opp_right) * nc + c];
        double wsum = 0.0;
        for (int k = 0; k < mesh_.dim; ++k)
          wsum += out.vertex_values[static_cast<std::size_t>(f.v[k]) * nc + c];
        fv.W_ij = wsum / mesh_.dim;
      }
      const FaceStates fs = reconstruct(fv, cfg_.recon);
      up[c] = fs.U_plus;
      um[c] = fs.U_minus;
    }
    if (!cfg_.is_euler) out.face_exterior[fi] = boundary ? ghost_u : um[0];

    FluxResult flux;
    if (cfg_.is_euler) {
      const EulerPrimitive WL = prim_from(up.data());
      const EulerPrimitive WR = prim_from(um.data());
      if (!(WL.rho > 0.0 && WL.p > 0.0 && WR.rho > 0.0 && WR.p > 0.0)) {
        std::ostringstream os;
        os << "reconstruction lost positivity at face " << fi << " (cells " << f.left
           << "," << f.right << ") at t=" << time_ << " step " << step_;
        throw PositivityError(os.str());
      }
      flux = cfg_.flux == FluxKind::roe ? flux_roe(WL, WR, f.normal, cfg_.gas)
                                        : flux_kfvs(WL, WR, f.normal, cfg_.gas);
    } else {
      flux = cfg_.scalar.kind == ScalarKind::advection
                 ? flux_scalar_upwind(up[0], um[0], f.normal, cfg_.scalar)
                 : flux_godunov_burgers(up[0], um[0], f.normal, cfg_.scalar);
    }

    double* rl = &out.residual[static_cast<std::size_t>(f.left) * nc];
    for (int c = 0; c < nc; ++c) rl[c] -= flux.flux[c];
    if (!boundary) {
      double* rr = &out.residual[static_cast<std::size_t>(f.right) * nc];
      for (int c = 0; c < nc; ++c) rr[c] += flux.flux[c];
    } else {
      for (int c = 0; c < nc; ++c) out.boundary_flux[c] += flux.flux[c];
    }
  }
  return out;
}

double Solver::compute_time_step() const {
  const std::vector<double> prim = to_primitive(state_);
  std::vector<double> speed_sum(mesh_.n_cells(), 0.0);
  for (int fi = 0; fi < mesh_.n_faces(); ++fi) {
    const Face& f = mesh_.faces[fi];
    const Vec3 nu = f.normal / f.measure;
    auto cell_speed = [&](int ci) {
      const double* q = &prim[static_cast<std::size_t>(ci) * ncomp_];
      if (cfg_.is_euler) return max_wave_speed(prim_from(q), nu, cfg_.gas);
      return scalar_wave_speed(q[0], nu, cfg_.scalar);
    };
    double lam = cell_speed(f.left);
    if (f.right != -1) lam = std::max(lam, cell_speed(f.right));
    if (!std::isfinite(lam)) throw NumericalError("non-finite wave speed");
    speed_sum[f.left] += lam * f.measure;
    if (f.right != -1) speed_sum[f.right] += lam * f.measure;
  }
  double dt = std::numeric_limits<double>::max();
  for (int i = 0; i < mesh_.n_cells(); ++i)
    if (speed_sum[i] > 0.0) dt = std::min(dt, mesh_.cells[i].measure / speed_sum[i]);
  if (dt == std::numeric_limits<double>::max())
    throw NumericalError("no wave speeds: cannot pick a time step");
  return cfl * dt;
}

void Solver::validate_state(const std::vector<double>& state, const char* where) {
  if (!cfg_.is_euler) return;
  for (int i = 0; i < mesh_.n_cells(); ++i) {
    const double* q = &state[static_cast<std::size_t>(i) * 5];
    EulerPrimitive W;
    try {
      W = cons_to_prim({q[0], Vec3{q[1], q[2], q[3]}, q[4]}, cfg_.gas);
    } catch (const PositivityError& e) {
      std::ostringstream os;
      os << e.what() << " in cell " << i << " (" << where << ") at t=" << time_
         << " step " << step_;
      throw PositivityError(os.str());
    }
    monitor_.min_density = std::min(monitor_.min_density, W.rho);
    monitor_.min_pressure = std::min(monitor_.min_pressure, W.p);
  }
}

void Solver::check_max_principle(const std::vector<double>& before,
                                 const std::vector<double>& after,
                                 const AssembleResult& ares) {
  double gmin = before[0], gmax = before[0];
  for (double v : before) {
    gmin = std::min(gmin, v);
    gmax = std::max(gmax, v);
  }
  const double slack = 1e-12 * (gmax - gmin);
  for (int i = 0; i < mesh_.n_cells(); ++i) {
    double lo = before[i], hi = before[i];
    for (int k = 0; k < mesh_.dim + 1; ++k) {
      const int fi = mesh_.cell_faces[i][k];
      const Face& f = mesh_.faces[fi];
      const double uj = f.right == -1
                            ? ares.face_exterior[fi]
                            : before[f.left == i ? f.right : f.left];
      const int opp = f.left == i ? f.opp_left : f.opp_right;
      const double vij = ares.vertex_values[opp];
      lo = std::min({lo, uj, vij});
      hi = std::max({hi, uj, vij});
    }
    if (after[i] < lo - slack || after[i] > hi + slack)
      monitor_.max_principle_violations.push_back({step_, i, after[i], lo, hi});
  }
}

void Solver::step_forward_euler(double dt) {
  const std::vector<double> before = state_;
  const AssembleResult ares = assemble_residual(state_);
  for (int i = 0; i < mesh_.n_cells(); ++i) {
    const double inv = dt / mesh_.cells[i].measure;
    for (int c = 0; c < ncomp_; ++c)
      state_[static_cast<std::size_t>(i) * ncomp_ + c] +=
          inv * ares.residual[static_cast<std::size_t>(i) * ncomp_ + c];
  }
  for (int c = 0; c < ncomp_; ++c)
    monitor_.boundary_flux_integral[c] += dt * ares.boundary_flux[c];
  ++step_;
  time_ += dt;
  validate_state(state_, "forward Euler update");
  if (cfg_.monitor_max_principle && !cfg_.is_euler)
    check_max_principle(before, state_, ares);
}

void Solver::step_ssprk3(double dt) {
  // each stage is a forward-Euler substep entering a convex combination, so
  // the maximum-principle monitor checks every substep against its own
  // stage data; the combinations cannot create new extrema
  const bool monitor = cfg_.monitor_max_principle && !cfg_.is_euler;
  int eval = 0;
  auto rhs = [&](const std::vector<double>& u) {
    AssembleResult ares = assemble_residual(u);
    const double w = ssprk3_stage_weight(eval++);
    for (int c = 0; c < ncomp_; ++c)
      monitor_.boundary_flux_integral[c] += w * dt * ares.boundary_flux[c];
    std::vector<double> dudt = std::move(ares.residual);
    for (int i = 0; i < mesh_.n_cells(); ++i) {
      const double inv = 1.0 / mesh_.cells[i].measure;
      for (int c = 0; c < ncomp_; ++c)
        dudt[static_cast<std::size_t>(i) * ncomp_ + c] *= inv;
    }
    if (monitor) {
      std::vector<double> substep(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) substep[i] = u[i] + dt * dudt[i];
      ares.residual.clear();
      check_max_principle(u, substep, ares);
    }
    return dudt;
  };
  ssprk3_step(state_, dt, rhs,
              [&](const std::vector<double>& u) { validate_state(u, "RK stage"); });
  ++step_;
  time_ += dt;
}

void Solver::run(const TimeControls& controls, const StepCallback& cb) {
  cfl = controls.cfl;
  if (cb) cb(*this, step_, time_);
  validate_state(state_, "initial condition");
  while (time_ < controls.t_end - 1e-14 * std::max(controls.t_end, 1.0) &&
         step_ < controls.max_steps) {
    double dt = controls.fixed_dt ? *controls.fixed_dt : compute_time_step();
    dt = std::min(dt, controls.t_end - time_);
    if (!(dt > 0.0)) break;
    try {
      if (controls.integrator == Integrator::forward_euler)
        step_forward_euler(dt);
      else
        step_ssprk3(dt);
    } catch (const PositivityError&) {
      monitor_.steps = step_;
      monitor_.final_time = time_;
      record_totals(monitor_.final_total);
      throw;
    }
    if (cb) cb(*this, step_, time_);
  }
  monitor_.steps = step_;
  monitor_.final_time = time_;
  record_totals(monitor_.final_total);
}

}  // namespace vcfv
