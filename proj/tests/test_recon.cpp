#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vcfv/recon.hpp"
#include "vcfv/vec.hpp"
#include "vcfv/verify.hpp"

using namespace vcfv;

TEST_CASE("limiter function theta") {
  CHECK(limiter_theta(-1.0) == 0.0);
  CHECK(limiter_theta(1.0) == 1.0);
  CHECK(limiter_theta(4.0) == 0.5);
  CHECK(limiter_theta(2.0) == 1.0);
  for (double r : {0.1, 0.5, 1.5, 2.5, 10.0, 1e6}) {
    const double t = limiter_theta(r);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK(t <= 2.0 / r + 1e-15);
    CHECK(t * r <= 2.0 + 1e-15);
  }
}

TEST_CASE("Frink reconstruction: direct evaluation") {
  const ReconConfig cfg = ReconConfig::for_dimension(ReconScheme::frink, false, 2);
  FaceValues in;
  in.U_i = 0.0;
  in.V_ij = -3.0;
  in.W_ij = 1.5;
  CHECK(reconstruct_frink(in, cfg).U_plus == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("Frink and upwind are exact at the face center of linear data") {
  // reference triangle, field x + y, face opposite the origin
  const ReconConfig f2 = ReconConfig::for_dimension(ReconScheme::frink, false, 2);
  const ReconConfig u2 = ReconConfig::for_dimension(ReconScheme::upwind, false, 2);
  FaceValues in;
  in.U_i = 2.0 / 3.0;   // value at the centroid
  in.V_ij = 0.0;        // origin vertex
  in.W_ij = 1.0;        // mean over (1,0) and (0,1)
  CHECK(reconstruct_frink(in, f2).U_plus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(reconstruct_upwind(in, u2).U_plus == doctest::Approx(1.0).epsilon(1e-14));

  // reference tetrahedron, field x + y + z
  const ReconConfig u3 = ReconConfig::for_dimension(ReconScheme::upwind, false, 3);
  FaceValues in3;
  in3.U_i = 3.0 / 4.0;
  in3.V_ij = 0.0;
  CHECK(reconstruct_upwind(in3, u3).U_plus == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("constant data is reproduced by every scheme") {
  FaceValues in;
  in.U_i = in.U_j = in.V_ij = in.V_ji = in.W_ij = 3.75;
  for (ReconScheme s : {ReconScheme::frink, ReconScheme::upwind, ReconScheme::jameson}) {
    for (bool limited : {false, true}) {
      ReconConfig cfg = ReconConfig::for_dimension(s, limited, 2);
      const FaceStates out = reconstruct(in, cfg);
      CHECK(out.U_plus == doctest::Approx(3.75).epsilon(1e-14));
      CHECK(out.U_minus == doctest::Approx(3.75).epsilon(1e-14));
    }
  }
}

TEST_CASE("unlimited linear exactness on random simplices") {
  std::mt19937_64 rng(2023);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int dim : {2, 3}) {
    const ReconConfig cf = ReconConfig::for_dimension(ReconScheme::frink, false, dim);
    const ReconConfig cu = ReconConfig::for_dimension(ReconScheme::upwind, false, dim);
    const int nv = dim + 1;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Vec3> verts(nv);
      for (Vec3& v : verts) v = {unif(rng), unif(rng), dim == 3 ? unif(rng) : 0.0};
      Vec3 cen;
      for (const Vec3& v : verts) cen += v;
      cen = cen / nv;
      const double a = unif(rng);
      const Vec3 g{unif(rng), unif(rng), dim == 3 ? unif(rng) : 0.0};
      auto F = [&](const Vec3& x) { return a + dot(g, x); };
      for (int k = 0; k < nv; ++k) {
        Vec3 fc;
        double wsum = 0.0;
        for (int j = 0; j < nv; ++j) {
          if (j == k) continue;
          fc += verts[j];
          wsum += F(verts[j]);
        }
        fc = fc / dim;
        FaceValues in;
        in.U_i = F(cen);
        in.V_ij = F(verts[k]);
        in.W_ij = wsum / dim;
        const double exact = F(fc);
        const double scale = std::max(1.0, std::abs(exact));
        CHECK(std::abs(reconstruct_frink(in, cf).U_plus - exact) <= 1e-12 * scale);
        CHECK(std::abs(reconstruct_upwind(in, cu).U_plus - exact) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("quadratic error bounds: frozen half-x^2 case on the reference triangle") {
  // U = x^2/2 on (0,0),(1,0),(0,1); face opposite the origin vertex
  const ReconConfig cf = ReconConfig::for_dimension(ReconScheme::frink, false, 2);
  const ReconConfig cu = ReconConfig::for_dimension(ReconScheme::upwind, false, 2);
  FaceValues in;
  in.U_i = 1.0 / 18.0;  // (1/3)^2 / 2
  in.V_ij = 0.0;
  in.W_ij = 0.25;       // (1/2 + 0)/2
  const double u_frink = reconstruct_frink(in, cf).U_plus;
  const double u_up = reconstruct_upwind(in, cu).U_plus;
  CHECK(u_frink == doctest::Approx(5.0 / 36.0).epsilon(1e-14));
  CHECK(u_up == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

  const double exact = 0.125;     // U(1/2, 1/2)
  const double h2 = 5.0 / 9.0;    // max |vertex - centroid|^2, K = 1
  const double ratio_frink = std::abs(u_frink - exact) / (frink_bound_constant(2) * h2);
  const double ratio_up = std::abs(u_up - exact) / (upwind_bound_constant(2) * h2);
  CHECK(ratio_frink == doctest::Approx(3.0 / 55.0).epsilon(1e-12));
  CHECK(ratio_up == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("quadratic error bounds hold on random trials") {
  for (int dim : {2, 3}) {
    const BoundAuditResult res = quadratic_bound_audit(dim, 2000, 99);
    CHECK(res.worst_frink <= 1.0 + 1e-9);
    CHECK(res.worst_upwind <= 1.0 + 1e-9);
    CHECK(res.worst_frink > 0.0);
    CHECK(res.worst_upwind > 0.0);
  }
}

TEST_CASE("Jameson reconstruction") {
  ReconConfig cfg = ReconConfig::for_dimension(ReconScheme::jameson, false, 3);
  FaceValues in;
  in.h_face = 1.0;

  // equal slopes: R = 0, L = 1
  in.U_i = 2.0, in.V_ij = 1.0;   // a = 1
  in.U_j = 5.0, in.V_ji = 6.0;   // b = 1
  FaceStates out = reconstruct_jameson(in, cfg);
  CHECK(out.U_plus == doctest::Approx(2.0 + 1.0 / 3.0).epsilon(1e-14));
  CHECK(out.U_minus == doctest::Approx(5.0 - 1.0 / 3.0).epsilon(1e-14));

  // opposite slopes: fully limited
  in.V_ij = 1.0;                 // a = 1
  in.V_ji = 4.0;                 // b = -1
  out = reconstruct_jameson(in, cfg);
  CHECK(out.U_plus == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(out.U_minus == doctest::Approx(5.0).epsilon(1e-14));

  // q = 1 behaves like minmod: one-sided slope gives zero increment
  cfg.jameson_q = 1.0;
  in.V_ij = 1.0;                 // a = 1
  in.V_ji = 5.0;                 // b = 0
  out = reconstruct_jameson(in, cfg);
  CHECK(out.U_plus == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("limited Frink gate and ratio") {
  const ReconConfig cfg = ReconConfig::for_dimension(ReconScheme::frink, true, 2);

  // local extremum: gate closes, first order
  FaceValues in;
  in.U_i = 2.0;
  in.U_j = 1.0;
  in.V_ij = 1.0;
  in.W_ij = 0.7;
  FaceStates out = limited_frink(in, cfg);
  CHECK(out.theta_ij == 0.0);
  CHECK(out.U_plus == doctest::Approx(2.0).epsilon(1e-14));

  // smooth data with r = 1: full second order
  in.U_i = 0.0;
  in.U_j = 0.2;
  in.V_ij = -0.1;
  in.W_ij = 0.2;  // dU = (1/3)(0.3) = 0.1 = (U_j - U_i)/2
  out = limited_frink(in, cfg);
  CHECK(out.theta_ij == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(out.U_plus == doctest::Approx(0.1).epsilon(1e-13));

  // r = 4: theta = 1/2, applied increment is half of dU
  in.U_i = 0.0;
  in.U_j = 0.1;
  in.V_ij = -0.3;
  in.W_ij = 0.3;  // dU = (1/3)(0.6) = 0.2 = 2 (U_j - U_i)
  out = limited_frink(in, cfg);
  CHECK(out.theta_ij == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(out.U_plus == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("limited upwind") {
  const ReconConfig cfg = ReconConfig::for_dimension(ReconScheme::upwind, true, 2);

  // flat upwind direction: increment vanishes
  FaceValues in;
  in.U_i = 1.0;
  in.V_ij = 1.0;
  in.U_j = 7.0;
  FaceStates out = limited_upwind(in, cfg);
  CHECK(out.U_plus == doctest::Approx(1.0).epsilon(1e-14));

  // linear data, r = 1: matches the unlimited value
  in.U_i = 0.0;
  in.V_ij = -0.2;
  in.U_j = 0.2;  // dU = 0.5*0.2 = 0.1
  out = limited_upwind(in, cfg);
  CHECK(out.theta_ij == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(out.U_plus == doctest::Approx(reconstruct_upwind(in, cfg).U_plus).epsilon(1e-13));

  // opposite signs: r < 0 gives theta = 0
  in.U_j = -0.3;
  out = limited_upwind(in, cfg);
  CHECK(out.theta_ij == 0.0);
  CHECK(out.U_plus == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("limited increments never exceed the unlimited ones and respect theta*r <= 2") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int dim : {2, 3}) {
    const ReconConfig lf = ReconConfig::for_dimension(ReconScheme::frink, true, dim);
    const ReconConfig lu = ReconConfig::for_dimension(ReconScheme::upwind, true, dim);
    for (int trial = 0; trial < 5000; ++trial) {
      FaceValues in;
      in.U_i = unif(rng);
      in.U_j = unif(rng);
      in.V_ij = unif(rng);
      in.V_ji = unif(rng);
      in.W_ij = unif(rng);

      const FaceStates f = limited_frink(in, lf);
      const double dU_f = lf.alpha * (in.W_ij - in.V_ij);
      CHECK(f.theta_ij >= 0.0);
      CHECK(f.theta_ij <= 1.0);
      CHECK(std::abs(f.U_plus - in.U_i) <= std::abs(dU_f) + 1e-15);
      const double denom_f = 0.5 * (in.U_j - in.U_i);
      if (std::abs(denom_f) > 1e-12)
        CHECK(f.theta_ij * dU_f / denom_f <= 2.0 + 1e-12);

      const FaceStates u = limited_upwind(in, lu);
      const double dU_u = lu.beta * (in.U_i - in.V_ij);
      CHECK(u.theta_ij >= 0.0);
      CHECK(u.theta_ij <= 1.0);
      CHECK(std::abs(u.U_plus - in.U_i) <= std::abs(dU_u) + 1e-15);
      if (std::abs(denom_f) > 1e-12)
        CHECK(u.theta_ij * dU_u / denom_f <= 2.0 + 1e-12);

      // gate: any applied Frink increment keeps U_i between V_ij and U_j sides
      if (f.theta_ij > 0.0)
        CHECK((in.U_j - in.U_i) * (in.U_i - in.V_ij) > 0.0);
    }
  }
}

TEST_CASE("boundary faces reconstruct first order") {
  FaceValues in;
  in.U_i = 1.5;
  in.U_j = 9.0;  // ghost
  in.V_ij = -4.0;
  in.boundary = true;
  for (ReconScheme s : {ReconScheme::frink, ReconScheme::upwind, ReconScheme::jameson}) {
    const ReconConfig cfg = ReconConfig::for_dimension(s, true, 3);
    const FaceStates out = reconstruct(in, cfg);
    CHECK(out.U_plus == 1.5);
    CHECK(out.U_minus == 9.0);
  }
}
