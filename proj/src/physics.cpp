#include "vcfv/physics.hpp"

#include <cmath>
#include <sstream>

#include "vcfv/errors.hpp"

namespace vcfv {

EulerPrimitive cons_to_prim(const EulerConserved& U, const GasModel& gas) {
  if (!(U.rho > 0.0)) {
    std::ostringstream os;
    os << "non-positive density " << U.rho;
    throw PositivityError(os.str());
  }
  EulerPrimitive W;
  W.rho = U.rho;
  W.u = U.m / U.rho;
  W.p = (gas.gamma - 1.0) * (U.E - 0.5 * U.rho * W.u.norm2());
  if (!(W.p > 0.0)) {
    std::ostringstream os;
    os << "non-positive pressure " << W.p << " (rho " << U.rho << ", E " << U.E << ")";
    throw PositivityError(os.str());
  }
  return W;
}

EulerConserved prim_to_cons(const EulerPrimitive& W, const GasModel& gas) {
  if (!(W.rho > 0.0) || !(W.p > 0.0)) {
    std::ostringstream os;
    os << "invalid primitive state (rho " << W.rho << ", p " << W.p << ")";
    throw PositivityError(os.str());
  }
  EulerConserved U;
  U.rho = W.rho;
  U.m = W.rho * W.u;
  U.E = W.p / (gas.gamma - 1.0) + 0.5 * W.rho * W.u.norm2();
  return U;
}

double sound_speed(const EulerPrimitive& W, const GasModel& gas) {
  return std::sqrt(gas.gamma * W.p / W.rho);
}

std::array<double, 5> euler_flux(const EulerPrimitive& W, const Vec3& n, const GasModel& gas) {
  const double un = dot(W.u, n);
  const double E = W.p / (gas.gamma - 1.0) + 0.5 * W.rho * W.u.norm2();
  return {W.rho * un,
          W.p * n.x + W.rho * W.u.x * un,
          W.p * n.y + W.rho * W.u.y * un,
          W.p * n.z + W.rho * W.u.z * un,
          (E + W.p) * un};
}

double max_wave_speed(const EulerPrimitive& W, const Vec3& n_unit, const GasModel& gas) {
  return std::abs(dot(W.u, n_unit)) + sound_speed(W, gas);
}

Vec3 scalar_flux(double u, const ScalarModel& model) {
  if (model.kind == ScalarKind::advection) return u * model.velocity;
  return 0.5 * u * u * model.burgers_dir;
}

double scalar_wave_speed(double u, const Vec3& n_unit, const ScalarModel& model) {
  if (model.kind == ScalarKind::advection) return std::abs(dot(model.velocity, n_unit));
  return std::abs(u * dot(model.burgers_dir, n_unit));
}

}  // namespace vcfv
