#include "vcfv/flux.hpp"

#include <algorithm>
#include <cmath>

#include "vcfv/errors.hpp"

namespace vcfv {

const char* to_string(FluxKind k) {
  switch (k) {
    case FluxKind::scalar_upwind: return "scalar_upwind";
    case FluxKind::godunov_burgers: return "godunov_burgers";
    case FluxKind::roe: return "roe";
    case FluxKind::kfvs: return "kfvs";
  }
  return "?";
}

FluxResult flux_scalar_upwind(double a, double b, const Vec3& n, const ScalarModel& model) {
  const double vn = dot(model.velocity, n);
  FluxResult out;
  out.ncomp = 1;
  out.has_split = true;
  out.plus[0] = std::max(vn, 0.0) * a;
  out.minus[0] = std::min(vn, 0.0) * b;
  out.flux[0] = out.plus[0] + out.minus[0];
  return out;
}

FluxResult flux_godunov_burgers(double a, double b, const Vec3& n, const ScalarModel& model) {
  const double c = dot(model.burgers_dir, n);
  auto g = [c](double u) { return 0.5 * c * u * u; };
  FluxResult out;
  out.ncomp = 1;
  out.has_split = true;
  double flux;
  if (a <= b) {
    // minimum over [a, b]; the sonic point u = 0 is the interior minimum of
    // a convex g (c > 0) and the maximum of a concave one
    if (c >= 0.0)
      flux = (a <= 0.0 && 0.0 <= b) ? 0.0 : std::min(g(a), g(b));
    else
      flux = std::min(g(a), g(b));
  } else {
    if (c >= 0.0)
      flux = std::max(g(a), g(b));
    else
      flux = (b <= 0.0 && 0.0 <= a) ? 0.0 : std::max(g(a), g(b));
  }
  out.flux[0] = flux;
  // Engquist-Osher decomposition of c*u^2/2; it differs from the Godunov
  // value only across a transonic shock, where no split is reported
  if (c >= 0.0) {
    out.plus[0] = g(std::max(a, 0.0));
    out.minus[0] = g(std::min(b, 0.0));
  } else {
    out.plus[0] = g(std::min(a, 0.0));
    out.minus[0] = g(std::max(b, 0.0));
  }
  if (std::abs(out.plus[0] + out.minus[0] - flux) >
      1e-13 * std::max({std::abs(flux), std::abs(out.plus[0]), 1e-300})) {
    out.has_split = false;
    out.plus[0] = out.minus[0] = 0.0;
  }
  return out;
}

namespace {

// Half-range Maxwellian moment flux of one state through a unit normal,
// scaled by area afterwards. sign = +1 for the left (outgoing) half, -1 for
// the right (incoming) half.
std::array<double, 5> kfvs_half(const EulerPrimitive& W, const Vec3& n_unit, double area,
                                const GasModel& gas, int sign) {
  const double un = dot(W.u, n_unit);
  const double beta = W.rho / (2.0 * W.p);
  const double s = un * std::sqrt(beta);
  const double A = 0.5 * (1.0 + sign * std::erf(s));
  const double B = sign * 0.5 * std::exp(-s * s) / std::sqrt(M_PI * beta);
  const double E = W.p / (gas.gamma - 1.0) + 0.5 * W.rho * W.u.norm2();
  std::array<double, 5> f;
  f[0] = W.rho * (un * A + B);
  f[1] = (W.p * n_unit.x + W.rho * W.u.x * un) * A + W.rho * W.u.x * B;
  f[2] = (W.p * n_unit.y + W.rho * W.u.y * un) * A + W.rho * W.u.y * B;
  f[3] = (W.p * n_unit.z + W.rho * W.u.z * un) * A + W.rho * W.u.z * B;
  f[4] = (E + W.p) * un * A + (E + 0.5 * W.p) * B;
  for (double& v : f) v *= area;
  return f;
}

}  // namespace

FluxResult flux_kfvs(const EulerPrimitive& left, const EulerPrimitive& right, const Vec3& n,
                     const GasModel& gas) {
  if (!(left.rho > 0.0) || !(left.p > 0.0) || !(right.rho > 0.0) || !(right.p > 0.0))
    throw PositivityError("invalid state passed to KFVS flux");
  const double area = n.norm();
  const Vec3 nu = n / area;
  FluxResult out;
  out.ncomp = 5;
  out.has_split = true;
  out.plus = kfvs_half(left, nu, area, gas, +1);
  out.minus = kfvs_half(right, nu, area, gas, -1);
  for (int k = 0; k < 5; ++k) out.flux[k] = out.plus[k] + out.minus[k];
  return out;
}

FluxResult flux_roe(const EulerPrimitive& left, const EulerPrimitive& right, const Vec3& n,
                    const GasModel& gas) {
  if (!(left.rho > 0.0) || !(left.p > 0.0) || !(right.rho > 0.0) || !(right.p > 0.0))
    throw PositivityError("invalid state passed to Roe flux");
  const double area = n.norm();
  const Vec3 nu = n / area;
  const double g = gas.gamma;

  const double unL = dot(left.u, nu);
  const double unR = dot(right.u, nu);
  const double aL = sound_speed(left, gas);
  const double aR = sound_speed(right, gas);
  const double HL = (left.p * g / (g - 1.0) + 0.5 * left.rho * left.u.norm2()) / left.rho;
  const double HR = (right.p * g / (g - 1.0) + 0.5 * right.rho * right.u.norm2()) / right.rho;

  // Roe averages
  const double sL = std::sqrt(left.rho);
  const double sR = std::sqrt(right.rho);
  const double w = sL / (sL + sR);
  const Vec3 u = w * left.u + (1.0 - w) * right.u;
  const double H = w * HL + (1.0 - w) * HR;
  const double un = dot(u, nu);
  const double a2 = (g - 1.0) * (H - 0.5 * u.norm2());
  const double a = std::sqrt(std::max(a2, 1e-300));
  const double rho = sL * sR;

  const double drho = right.rho - left.rho;
  const double dp = right.p - left.p;
  const double dun = unR - unL;
  const Vec3 du = right.u - left.u;

  // wave strengths
  const double alpha1 = (dp - rho * a * dun) / (2.0 * a * a);  // un - a
  const double alpha2 = drho - dp / (a * a);                   // entropy wave
  const double alpha5 = (dp + rho * a * dun) / (2.0 * a * a);  // un + a

  double l1 = std::abs(un - a);
  const double l2 = std::abs(un);
  double l5 = std::abs(un + a);
  // entropy fix on the acoustic waves only
  const double delta = 0.05 * 0.5 * (aL + aR);
  if (l1 < delta) l1 = 0.5 * (l1 * l1 / delta + delta);
  if (l5 < delta) l5 = 0.5 * (l5 * l5 / delta + delta);

  std::array<double, 5> diss{};
  auto add_wave = [&diss](double lam, double strength, const std::array<double, 5>& r) {
    for (int k = 0; k < 5; ++k) diss[k] += lam * strength * r[k];
  };
  add_wave(l1, alpha1, {1.0, u.x - a * nu.x, u.y - a * nu.y, u.z - a * nu.z, H - a * un});
  add_wave(l2, alpha2, {1.0, u.x, u.y, u.z, 0.5 * u.norm2()});
  // shear waves, combined
  add_wave(l2, rho,
           {0.0, du.x - dun * nu.x, du.y - dun * nu.y, du.z - dun * nu.z,
            dot(u, du) - un * dun});
  add_wave(l5, alpha5, {1.0, u.x + a * nu.x, u.y + a * nu.y, u.z + a * nu.z, H + a * un});

  const auto fL = euler_flux(left, nu, gas);
  const auto fR = euler_flux(right, nu, gas);
  FluxResult out;
  out.ncomp = 5;
  for (int k = 0; k < 5; ++k)
    out.flux[k] = area * (0.5 * (fL[k] + fR[k]) - 0.5 * diss[k]);
  return out;
}

}  // namespace vcfv
