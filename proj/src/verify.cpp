#include "vcfv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "vcfv/errors.hpp"

namespace vcfv {

ScalarExact::ScalarExact(const ScalarModel& model, std::function<double(const Vec3&)> initial,
                         Vec3 period)
    : model_(model), u0_(std::move(initial)), period_(period) {}

double ScalarExact::operator()(const Vec3& x, double t) const {
  if (model_.kind == ScalarKind::advection) {
    Vec3 x0 = x - t * model_.velocity;
    auto wrap = [](double v, double L) {
      if (L <= 0.0) return v;
      v = std::fmod(v, L);
      return v < 0.0 ? v + L : v;
    };
    x0 = {wrap(x0.x, period_.x), wrap(x0.y, period_.y), wrap(x0.z, period_.z)};
    return u0_(x0);
  }
  // Burgers, pre-shock: u satisfies u = u0(x - u t dir); solve by damped
  // fixed-point/Newton on g(u) = u - u0(x - u t dir)
  double u = u0_(x);
  for (int it = 0; it < 200; ++it) {
    const double f = u - u0_(x - u * t * model_.burgers_dir);
    const double h = 1e-7 * std::max(1.0, std::abs(u));
    const double fp =
        (u + h - u0_(x - (u + h) * t * model_.burgers_dir) - f) / h;
    if (!(std::abs(fp) > 1e-12))
      throw NumericalError("Burgers characteristics crossed (post-shock time)");
    const double un = u - f / fp;
    if (std::abs(un - u) < 1e-14 * std::max(1.0, std::abs(un))) return un;
    u = un;
  }
  throw NumericalError("Burgers characteristic solve did not converge");
}

ConvergenceResult convergence_study(const std::vector<int>& levels,
                                    const std::function<ConvergenceLevel(int)>& run_level) {
  ConvergenceResult out;
  for (int n : levels) out.levels.push_back(run_level(n));
  for (std::size_t k = 0; k + 1 < out.levels.size(); ++k) {
    const auto& a = out.levels[k];
    const auto& b = out.levels[k + 1];
    out.orders.push_back(std::log(a.l1 / b.l1) / std::log(a.h / b.h));
  }
  return out;
}

std::string ConvergenceResult::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "level,h,L1,order\n";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    os << levels[k].n << "," << levels[k].h << "," << levels[k].l1 << ",";
    if (k > 0) os << orders[k - 1];
    os << "\n";
  }
  return os.str();
}

double frink_bound_constant(int dim) { return dim == 2 ? 11.0 / 24.0 : 11.0 / 36.0; }
double upwind_bound_constant(int dim) { return dim == 2 ? 3.0 / 8.0 : 2.0 / 9.0; }

namespace {

// spectral norm of a symmetric 3x3 (or embedded 2x2) matrix by Jacobi sweep
double spectral_norm_sym(const std::array<std::array<double, 3>, 3>& m0, int dim) {
  std::array<std::array<double, 3>, 3> a = m0;
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < dim; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < dim; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  double norm = 0.0;
  for (int k = 0; k < dim; ++k) norm = std::max(norm, std::abs(a[k][k]));
  return norm;
}

struct Quadratic {
  double c0 = 0.0;
  Vec3 g;
  std::array<std::array<double, 3>, 3> q{};  // symmetric Hessian

  double operator()(const Vec3& x) const {
    const std::array<double, 3> xv{x.x, x.y, x.z};
    double s = c0 + dot(g, x);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s += 0.5 * q[a][b] * xv[a] * xv[b];
    return s;
  }
};

}  // namespace

BoundAuditResult quadratic_bound_audit(int dim, int trials, std::uint64_t seed) {
  BoundAuditResult out;
  out.dim = dim;
  out.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const int nv = dim + 1;
  const double cf = frink_bound_constant(dim);
  const double cu = upwind_bound_constant(dim);

  for (int trial = 0; trial < trials; ++trial) {
    // random non-degenerate simplex; redraw while too flat
    std::vector<Vec3> verts(nv);
    double measure = 0.0, scale = 0.0;
    do {
      for (Vec3& v : verts) {
        v = {unif(rng), unif(rng), dim == 3 ? unif(rng) : 0.0};
      }
      scale = 0.0;
      for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b)
          scale = std::max(scale, (verts[a] - verts[b]).norm());
      if (dim == 2) {
        const Vec3 e1 = verts[1] - verts[0], e2 = verts[2] - verts[0];
        measure = 0.5 * std::abs(e1.x * e2.y - e1.y * e2.x);
      } else {
        const Vec3 e1 = verts[1] - verts[0], e2 = verts[2] - verts[0],
                   e3 = verts[3] - verts[0];
        measure = std::abs(dot(cross(e1, e2), e3)) / 6.0;
      }
    } while (!(measure > 1e-3 * std::pow(scale, dim)));

    Vec3 centroid;
    for (const Vec3& v : verts) centroid += v;
    centroid = centroid / static_cast<double>(nv);

    Quadratic F;
    F.c0 = unif(rng);
    F.g = {unif(rng), unif(rng), dim == 3 ? unif(rng) : 0.0};
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) F.q[a][b] = F.q[b][a] = unif(rng);
    const double K = spectral_norm_sym(F.q, dim);
    if (!(K > 1e-12)) continue;  // essentially linear: error is zero by exactness

    double h = 0.0;
    for (const Vec3& v : verts) h = std::max(h, (v - centroid).norm());
    const double U0 = F(centroid);

    const ReconConfig cfg_f = ReconConfig::for_dimension(ReconScheme::frink, false, dim);
    const ReconConfig cfg_u = ReconConfig::for_dimension(ReconScheme::upwind, false, dim);

    for (int k = 0; k < nv; ++k) {
      // face opposite vertex k
      Vec3 fc;
      double wsum = 0.0;
      for (int j = 0; j < nv; ++j) {
        if (j == k) continue;
        fc += verts[j];
        wsum += F(verts[j]);
      }
      fc = fc / static_cast<double>(dim);
      const double W = wsum / dim;
      const double V = F(verts[k]);
      const double Ue = F(fc);

      FaceValues in;
      in.U_i = U0;
      in.V_ij = V;
      in.W_ij = W;
      const double uf = reconstruct_frink(in, cfg_f).U_plus;
      const double uu = reconstruct_upwind(in, cfg_u).U_plus;
      out.worst_frink = std::max(out.worst_frink, std::abs(uf - Ue) / (cf * K * h * h));
      out.worst_upwind = std::max(out.worst_upwind, std::abs(uu - Ue) / (cu * K * h * h));
    }
  }
  return out;
}

double shock_radius(const RadialProfile& prof) {
  const std::size_t n = prof.r.size();
  if (n < 3) throw NumericalError("radial profile too short");
  double best = 0.0, best_r = prof.r[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double dr = prof.r[i + 1] - prof.r[i - 1];
    if (!(std::abs(dr) > 0.0)) continue;
    const double grad = std::abs((prof.p[i + 1] - prof.p[i - 1]) / dr);
    if (grad > best) {
      best = grad;
      best_r = prof.r[i];
    }
  }
  if (!(best > 0.0)) throw NumericalError("no pressure gradient detected");
  return best_r;
}

double fit_log_slope(const std::vector<double>& x, const std::vector<double>& y,
                     double* residual) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  if (residual) {
    const double icpt = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::log(y[i]) - (icpt + slope * std::log(x[i]));
      rss += e * e;
    }
    *residual = std::sqrt(rss / n);
  }
  return slope;
}

TaylorFit taylor_radius_check(const std::vector<RadialProfile>& snapshots) {
  TaylorFit fit;
  for (const RadialProfile& s : snapshots) {
    if (!(s.time > 0.0)) continue;
    try {
      const double R = shock_radius(s);
      fit.times.push_back(s.time);
      fit.radii.push_back(R);
    } catch (const NumericalError&) {
      // snapshot without a detectable shock is skipped
    }
  }
  if (fit.times.size() < 4) return fit;  // valid stays false
  fit.slope = fit_log_slope(fit.times, fit.radii, &fit.residual);
  fit.valid = true;
  return fit;
}

}  // namespace vcfv
