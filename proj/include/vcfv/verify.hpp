#ifndef VCFV_VERIFY_HPP
#define VCFV_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vcfv/physics.hpp"
#include "vcfv/recon.hpp"
#include "vcfv/riemann_exact.hpp"

namespace vcfv {

/// Exact scalar solutions for convergence studies: translated profile for
/// advection, characteristic tracing for pre-shock Burgers.
class ScalarExact {
 public:
  ScalarExact(const ScalarModel& model, std::function<double(const Vec3&)> initial,
              Vec3 period = Vec3{0, 0, 0});

  /// Throws NumericalError for Burgers past characteristic crossing.
  double operator()(const Vec3& x, double t) const;

 private:
  ScalarModel model_;
  std::function<double(const Vec3&)> u0_;
  Vec3 period_;
};

struct ConvergenceLevel {
  int n = 0;
  double h = 0.0;
  double l1 = 0.0;
  double linf = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceLevel> levels;
  std::vector<double> orders;  // fitted per refinement pair, from L1

  std::string to_csv() const;  // level,h,L1,order
};

/// Runs the supplied level driver (returns L1/Linf errors for a mesh with
/// n cells per direction) over each level and fits observed orders.
ConvergenceResult convergence_study(const std::vector<int>& levels,
                                    const std::function<ConvergenceLevel(int)>& run_level);

struct BoundAuditResult {
  double worst_frink = 0.0;
  double worst_upwind = 0.0;
  int trials = 0;
  int dim = 0;
};

/// Error-bound audit for the reconstruction schemes on random simplices
/// with random quadratic fields and exact vertex data. Ratios are
/// |U+ - U_e| / (C K h^2) against the scheme's error constant C.
BoundAuditResult quadratic_bound_audit(int dim, int trials, std::uint64_t seed);

/// Error constants of the reconstruction bounds.
double frink_bound_constant(int dim);   // 11/24 (2-D), 11/36 (3-D)
double upwind_bound_constant(int dim);  // 3/8 (2-D), 2/9 (3-D)

struct RadialProfile {
  double time = 0.0;
  std::vector<double> r;
  std::vector<double> p;
};

struct TaylorFit {
  bool valid = false;
  std::vector<double> times;
  std::vector<double> radii;
  double slope = 0.0;     // d log R / d log t, theory 2/5
  double residual = 0.0;  // rms residual of the log-log fit
};

/// Shock radius = location of the steepest pressure gradient.
double shock_radius(const RadialProfile& profile);

/// Least-squares slope of log R vs log t over the snapshots.
TaylorFit taylor_radius_check(const std::vector<RadialProfile>& snapshots);

/// Fit helper (exposed for direct testing): slope of log y vs log x.
double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                     double* residual = nullptr);

}  // namespace vcfv

#endif
