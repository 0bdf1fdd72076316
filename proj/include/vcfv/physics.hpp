#ifndef VCFV_PHYSICS_HPP
#define VCFV_PHYSICS_HPP

#include <array>

#include "vcfv/vec.hpp"

namespace vcfv {

struct GasModel {
  double gamma = 1.4;
};

/// Conserved Euler state (rho, rho*u, E). Third momentum component is zero
/// for 2-D runs; one code path serves both dimensions.
struct EulerConserved {
  double rho = 0.0;
  Vec3 m;
  double E = 0.0;
};

struct EulerPrimitive {
  double rho = 0.0;
  Vec3 u;
  double p = 0.0;
};

/// p = (gamma-1)(E - rho|u|^2/2); throws PositivityError when density or
/// pressure is non-positive.
EulerPrimitive cons_to_prim(const EulerConserved& U, const GasModel& gas);
EulerConserved prim_to_cons(const EulerPrimitive& W, const GasModel& gas);

double sound_speed(const EulerPrimitive& W, const GasModel& gas);

/// F(W).n for arbitrary n (linear in n). Component order (rho, mx, my, mz, E).
std::array<double, 5> euler_flux(const EulerPrimitive& W, const Vec3& n, const GasModel& gas);

/// |u.n| + a for a unit normal.
double max_wave_speed(const EulerPrimitive& W, const Vec3& n_unit, const GasModel& gas);

enum class ScalarKind { advection, burgers };

struct ScalarModel {
  ScalarKind kind = ScalarKind::advection;
  Vec3 velocity{1.0, 0.0, 0.0};   // advection speed
  Vec3 burgers_dir{1.0, 0.0, 0.0};  // transport direction of u^2/2
};

Vec3 scalar_flux(double u, const ScalarModel& model);

/// |dF/du . n| for a unit normal: |v.n| for advection, |u (dir.n)| for Burgers.
double scalar_wave_speed(double u, const Vec3& n_unit, const ScalarModel& model);

}  // namespace vcfv

#endif
