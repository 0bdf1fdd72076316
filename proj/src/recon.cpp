#include "vcfv/recon.hpp"

#include <algorithm>
#include <cmath>

namespace vcfv {

const char* to_string(ReconScheme s) {
  switch (s) {
    case ReconScheme::first_order: return "first_order";
    case ReconScheme::frink: return "frink";
    case ReconScheme::upwind: return "upwind";
    case ReconScheme::jameson: return "jameson";
  }
  return "?";
}

ReconConfig ReconConfig::for_dimension(ReconScheme scheme, bool limited, int dim) {
  ReconConfig cfg;
  cfg.scheme = scheme;
  cfg.limited = limited;
  cfg.alpha = dim == 2 ? 1.0 / 3.0 : 1.0 / 4.0;
  cfg.beta = dim == 2 ? 1.0 / 2.0 : 1.0 / 3.0;
  return cfg;
}

double limiter_theta(double r) {
  return std::max(0.0, std::min(1.0, 2.0 / r));
}

FaceStates reconstruct_frink(const FaceValues& in, const ReconConfig& cfg) {
  FaceStates out;
  out.U_plus = in.U_i + cfg.alpha * (in.W_ij - in.V_ij);
  out.U_minus = in.U_j + cfg.alpha * (in.W_ij - in.V_ji);
  return out;
}

FaceStates reconstruct_upwind(const FaceValues& in, const ReconConfig& cfg) {
  FaceStates out;
  out.U_plus = in.U_i + cfg.beta * (in.U_i - in.V_ij);
  out.U_minus = in.U_j + cfg.beta * (in.U_j - in.V_ji);
  return out;
}

FaceStates reconstruct_jameson(const FaceValues& in, const ReconConfig& cfg) {
  const double a = in.U_i - in.V_ij;
  const double b = in.V_ji - in.U_j;
  const double floor = cfg.jameson_eps * std::pow(in.h_face, 1.5);
  const double denom = std::max(std::abs(a) + std::abs(b), floor);
  double R = std::pow(std::abs((a - b) / denom), cfg.jameson_q);
  R = std::min(R, 1.0);
  const double L = 0.5 * (a + b) * (1.0 - R);
  FaceStates out;
  out.U_plus = in.U_i + L / 3.0;
  out.U_minus = in.U_j - L / 3.0;
  out.theta_ij = out.theta_ji = 1.0 - R;
  return out;
}

namespace {

// theta for one side given the increment dU and the across-face jump
// U_other - U_this. Near-zero jumps: a nonzero increment against a flat
// neighbour difference is the r -> infinity limit (theta -> 0); flat-flat
// keeps theta = 1 so smooth regions stay second order.
double limited_theta(double dU, double jump, double u_this, double u_other) {
  const double tiny = 1e-14 * std::max({std::abs(u_this), std::abs(u_other), 1.0});
  if (std::abs(jump) < tiny) return std::abs(dU) > tiny ? 0.0 : 1.0;
  return limiter_theta(dU / (0.5 * jump));
}

}  // namespace

FaceStates limited_frink(const FaceValues& in, const ReconConfig& cfg) {
  FaceStates out;
  const double dU_ij = cfg.alpha * (in.W_ij - in.V_ij);
  const double dU_ji = cfg.alpha * (in.W_ij - in.V_ji);
  // gate: U_i must lie between V_ij and U_j, else drop to first order
  if ((in.U_j - in.U_i) * (in.U_i - in.V_ij) <= 0.0)
    out.theta_ij = 0.0;
  else
    out.theta_ij = limited_theta(dU_ij, in.U_j - in.U_i, in.U_i, in.U_j);
  if ((in.U_i - in.U_j) * (in.U_j - in.V_ji) <= 0.0)
    out.theta_ji = 0.0;
  else
    out.theta_ji = limited_theta(dU_ji, in.U_i - in.U_j, in.U_j, in.U_i);
  out.U_plus = in.U_i + out.theta_ij * dU_ij;
  out.U_minus = in.U_j + out.theta_ji * dU_ji;
  return out;
}

FaceStates limited_upwind(const FaceValues& in, const ReconConfig& cfg) {
  FaceStates out;
  const double dU_ij = cfg.beta * (in.U_i - in.V_ij);
  const double dU_ji = cfg.beta * (in.U_j - in.V_ji);
  out.theta_ij = limited_theta(dU_ij, in.U_j - in.U_i, in.U_i, in.U_j);
  out.theta_ji = limited_theta(dU_ji, in.U_i - in.U_j, in.U_j, in.U_i);
  out.U_plus = in.U_i + out.theta_ij * dU_ij;
  out.U_minus = in.U_j + out.theta_ji * dU_ji;
  return out;
}

FaceStates reconstruct(const FaceValues& in, const ReconConfig& cfg) {
  if (in.boundary || cfg.scheme == ReconScheme::first_order) {
    FaceStates out;
    out.U_plus = in.U_i;
    out.U_minus = in.U_j;
    return out;
  }
  switch (cfg.scheme) {
    case ReconScheme::frink:
      return cfg.limited ? limited_frink(in, cfg) : reconstruct_frink(in, cfg);
    case ReconScheme::upwind:
      return cfg.limited ? limited_upwind(in, cfg) : reconstruct_upwind(in, cfg);
    case ReconScheme::jameson:
      return reconstruct_jameson(in, cfg);
    default:
      break;
  }
  FaceStates out;
  out.U_plus = in.U_i;
  out.U_minus = in.U_j;
  return out;
}

}  // namespace vcfv
