#ifndef VCFV_RECON_HPP
#define VCFV_RECON_HPP

namespace vcfv {

enum class ReconScheme { first_order, frink, upwind, jameson };

const char* to_string(ReconScheme s);

/// Per-face scalar inputs for reconstruction. V_ji and U_j are only
/// meaningful on interior faces; W_ij is shared by both sides.
struct FaceValues {
  double U_i = 0.0;
  double U_j = 0.0;
  double V_ij = 0.0;
  double V_ji = 0.0;
  double W_ij = 0.0;
  double h_face = 1.0;  // local length scale for the Jameson threshold
  bool boundary = false;
};

struct ReconConfig {
  ReconScheme scheme = ReconScheme::first_order;
  bool limited = false;
  double alpha = 1.0 / 3.0;  // Frink factor: 1/3 in 2-D, 1/4 in 3-D
  double beta = 0.5;         // upwind factor: 1/2 in 2-D, 1/3 in 3-D
  double jameson_q = 2.0;
  double jameson_eps = 0.05;

  static ReconConfig for_dimension(ReconScheme scheme, bool limited, int dim);
};

struct FaceStates {
  double U_plus = 0.0;
  double U_minus = 0.0;
  double theta_ij = 1.0;
  double theta_ji = 1.0;
};

/// theta(r) = max(0, min(1, 2/r)).
double limiter_theta(double r);

FaceStates reconstruct_frink(const FaceValues& in, const ReconConfig& cfg);
FaceStates reconstruct_upwind(const FaceValues& in, const ReconConfig& cfg);
FaceStates reconstruct_jameson(const FaceValues& in, const ReconConfig& cfg);
FaceStates limited_frink(const FaceValues& in, const ReconConfig& cfg);
FaceStates limited_upwind(const FaceValues& in, const ReconConfig& cfg);

/// Dispatch per cfg; boundary faces always get first-order U_plus = U_i.
FaceStates reconstruct(const FaceValues& in, const ReconConfig& cfg);

}  // namespace vcfv

#endif
