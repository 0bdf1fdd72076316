#ifndef VCFV_RIEMANN_EXACT_HPP
#define VCFV_RIEMANN_EXACT_HPP

#include "vcfv/physics.hpp"

namespace vcfv {

enum class WaveType { shock, rarefaction };

/// 1-D primitive state used by the exact Riemann solution.
struct Prim1D {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

/// Exact solution of the 1-D Euler Riemann problem (pressure-function
/// Newton iteration). sample(xi) evaluates the self-similar solution at
/// xi = x/t.
struct RiemannSolution {
  Prim1D left, right;
  double gamma = 1.4;
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_left = 0.0;
  double rho_star_right = 0.0;
  WaveType left_wave = WaveType::shock;
  WaveType right_wave = WaveType::shock;
  int iterations = 0;

  Prim1D sample(double xi) const;
};

RiemannSolution exact_riemann(const Prim1D& left, const Prim1D& right, const GasModel& gas);

}  // namespace vcfv

#endif
