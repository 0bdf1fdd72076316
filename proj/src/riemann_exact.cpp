#include "vcfv/riemann_exact.hpp"

#include <cmath>
#include <sstream>

#include "vcfv/errors.hpp"

namespace vcfv {

namespace {

struct SideFn {
  double rho, u, p, a;
  double A, B;  // shock branch constants
  double g;

  // f_K(p*) and its derivative
  double f(double ps) const {
    if (ps > p) return (ps - p) * std::sqrt(A / (ps + B));
    return 2.0 * a / (g - 1.0) * (std::pow(ps / p, (g - 1.0) / (2.0 * g)) - 1.0);
  }
  double df(double ps) const {
    if (ps > p) {
      const double q = std::sqrt(A / (ps + B));
      return q * (1.0 - 0.5 * (ps - p) / (ps + B));
    }
    return std::pow(ps / p, -(g + 1.0) / (2.0 * g)) / (rho * a);
  }
};

SideFn make_side(const Prim1D& s, double g) {
  SideFn f;
  f.rho = s.rho;
  f.u = s.u;
  f.p = s.p;
  f.g = g;
  f.a = std::sqrt(g * s.p / s.rho);
  f.A = 2.0 / ((g + 1.0) * s.rho);
  f.B = (g - 1.0) / (g + 1.0) * s.p;
  return f;
}

}  // namespace

RiemannSolution exact_riemann(const Prim1D& left, const Prim1D& right, const GasModel& gas) {
  const double g = gas.gamma;
  if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
    throw PositivityError("Riemann data must have positive density and pressure");
  const SideFn L = make_side(left, g);
  const SideFn R = make_side(right, g);
  const double du = right.u - left.u;
  if (2.0 * (L.a + R.a) / (g - 1.0) <= du)
    throw NumericalError("Riemann data generates vacuum");

  // two-rarefaction initial guess
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((L.a + R.a - 0.5 * (g - 1.0) * du) /
                          (L.a / std::pow(left.p, z) + R.a / std::pow(right.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-14 * std::min(left.p, right.p));

  RiemannSolution sol;
  sol.left = left;
  sol.right = right;
  sol.gamma = g;
  for (int it = 0; it < 100; ++it) {
    const double f = L.f(p) + R.f(p) + du;
    const double df = L.df(p) + R.df(p);
    double pn = p - f / df;
    if (pn < 0.0) pn = 1e-14 * p;
    const double change = std::abs(pn - p) / (0.5 * (pn + p));
    p = pn;
    sol.iterations = it + 1;
    if (change < 1e-13) break;
  }
  sol.p_star = p;
  sol.u_star = 0.5 * (left.u + right.u) + 0.5 * (R.f(p) - L.f(p));
  sol.left_wave = p > left.p ? WaveType::shock : WaveType::rarefaction;
  sol.right_wave = p > right.p ? WaveType::shock : WaveType::rarefaction;
  const double gr = (g - 1.0) / (g + 1.0);
  sol.rho_star_left = sol.left_wave == WaveType::shock
                          ? left.rho * (p / left.p + gr) / (gr * p / left.p + 1.0)
                          : left.rho * std::pow(p / left.p, 1.0 / g);
  sol.rho_star_right = sol.right_wave == WaveType::shock
                           ? right.rho * (p / right.p + gr) / (gr * p / right.p + 1.0)
                           : right.rho * std::pow(p / right.p, 1.0 / g);
  return sol;
}

Prim1D RiemannSolution::sample(double xi) const {
  const double g = gamma;
  const double aL = std::sqrt(g * left.p / left.rho);
  const double aR = std::sqrt(g * right.p / right.rho);

  if (xi <= u_star) {
    // left of the contact
    if (left_wave == WaveType::shock) {
      const double SL =
          left.u - aL * std::sqrt((g + 1.0) / (2.0 * g) * p_star / left.p +
                                  (g - 1.0) / (2.0 * g));
      if (xi <= SL) return {left.rho, left.u, left.p};
      return {rho_star_left, u_star, p_star};
    }
    const double head = left.u - aL;
    const double a_star = aL * std::pow(p_star / left.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star - a_star;
    if (xi <= head) return {left.rho, left.u, left.p};
    if (xi >= tail) return {rho_star_left, u_star, p_star};
    const double a = (2.0 * aL + (g - 1.0) * (left.u - xi)) / (g + 1.0);
    const double u = xi + a;
    const double rho = left.rho * std::pow(a / aL, 2.0 / (g - 1.0));
    const double p = left.p * std::pow(a / aL, 2.0 * g / (g - 1.0));
    return {rho, u, p};
  }

  // right of the contact
  if (right_wave == WaveType::shock) {
    const double SR =
        right.u + aR * std::sqrt((g + 1.0) / (2.0 * g) * p_star / right.p +
                                 (g - 1.0) / (2.0 * g));
    if (xi >= SR) return {right.rho, right.u, right.p};
    return {rho_star_right, u_star, p_star};
  }
  const double head = right.u + aR;
  const double a_star = aR * std::pow(p_star / right.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star + a_star;
  if (xi >= head) return {right.rho, right.u, right.p};
  if (xi <= tail) return {rho_star_right, u_star, p_star};
  const double a = (2.0 * aR - (g - 1.0) * (right.u - xi)) / (g + 1.0);
  const double u = xi - a;
  const double rho = right.rho * std::pow(a / aR, 2.0 / (g - 1.0));
  const double p = right.p * std::pow(a / aR, 2.0 * g / (g - 1.0));
  return {rho, u, p};
}

}  // namespace vcfv
