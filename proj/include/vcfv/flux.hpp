#ifndef VCFV_FLUX_HPP
#define VCFV_FLUX_HPP

#include <array>

#include "vcfv/physics.hpp"

namespace vcfv {

enum class FluxKind { scalar_upwind, godunov_burgers, roe, kfvs };

const char* to_string(FluxKind k);

/// Numerical flux H(a,b,n). For split fluxes H = H+(a,n) + H-(b,n) the two
/// parts are reported; their sum always reproduces `flux`.
struct FluxResult {
  std::array<double, 5> flux{};
  int ncomp = 1;
  bool has_split = false;
  std::array<double, 5> plus{};
  std::array<double, 5> minus{};
};

FluxResult flux_scalar_upwind(double a, double b, const Vec3& n, const ScalarModel& model);
FluxResult flux_godunov_burgers(double a, double b, const Vec3& n, const ScalarModel& model);

/// Kinetic flux vector splitting: half-range Maxwellian moments in the
/// face-normal velocity.
FluxResult flux_kfvs(const EulerPrimitive& left, const EulerPrimitive& right, const Vec3& n,
                     const GasModel& gas);

/// Roe flux with an entropy fix on the acoustic waves.
FluxResult flux_roe(const EulerPrimitive& left, const EulerPrimitive& right, const Vec3& n,
                    const GasModel& gas);

}  // namespace vcfv

#endif
