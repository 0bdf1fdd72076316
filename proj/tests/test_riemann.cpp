#include <doctest.h>

#include <cmath>

#include "vcfv/errors.hpp"
#include "vcfv/riemann_exact.hpp"

using namespace vcfv;

namespace {

// Rankine-Hugoniot residual of a discontinuity moving at speed S.
double rh_residual(const Prim1D& a, const Prim1D& b, double S, double gamma) {
  const double Ea = a.p / (gamma - 1.0) + 0.5 * a.rho * a.u * a.u;
  const double Eb = b.p / (gamma - 1.0) + 0.5 * b.rho * b.u * b.u;
  const double m = std::abs((b.rho * b.u - a.rho * a.u) - S * (b.rho - a.rho));
  const double mo = std::abs((b.rho * b.u * b.u + b.p - a.rho * a.u * a.u - a.p) -
                             S * (b.rho * b.u - a.rho * a.u));
  const double en = std::abs(((Eb + b.p) * b.u - (Ea + a.p) * a.u) - S * (Eb - Ea));
  return std::max({m, mo, en});
}

}  // namespace

TEST_CASE("Sod problem star state matches the frozen reference") {
  const RiemannSolution sol = exact_riemann({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, GasModel{});
  CHECK(sol.p_star == doctest::Approx(0.30313).epsilon(2e-5));
  CHECK(sol.u_star == doctest::Approx(0.92745).epsilon(2e-5));
  CHECK(sol.left_wave == WaveType::rarefaction);
  CHECK(sol.right_wave == WaveType::shock);

  // the right shock satisfies the jump conditions
  const double g = 1.4;
  const double aR = std::sqrt(g * 0.1 / 0.125);
  const double SR = 0.0 + aR * std::sqrt((g + 1.0) / (2.0 * g) * sol.p_star / 0.1 +
                                         (g - 1.0) / (2.0 * g));
  const Prim1D pre{0.125, 0.0, 0.1};
  const Prim1D post{sol.rho_star_right, sol.u_star, sol.p_star};
  CHECK(rh_residual(pre, post, SR, g) <= 1e-10);
}

TEST_CASE("symmetric data yields a zero contact speed") {
  const RiemannSolution sol = exact_riemann({1.0, -2.0, 0.4}, {1.0, 2.0, 0.4}, GasModel{});
  CHECK(std::abs(sol.u_star) <= 1e-12);
  CHECK(sol.left_wave == WaveType::rarefaction);
  CHECK(sol.right_wave == WaveType::rarefaction);
  CHECK(sol.p_star < 0.4);
  CHECK(sol.p_star > 0.0);
}

TEST_CASE("identical data reproduces itself everywhere") {
  const RiemannSolution sol = exact_riemann({0.7, 0.3, 1.2}, {0.7, 0.3, 1.2}, GasModel{});
  for (double xi : {-2.0, -0.5, 0.0, 0.3, 2.0}) {
    const Prim1D s = sol.sample(xi);
    CHECK(s.rho == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(s.u == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(s.p == doctest::Approx(1.2).epsilon(1e-12));
  }
}

TEST_CASE("mirror symmetry of the solver") {
  const Prim1D L{0.9, 0.4, 1.1};
  const Prim1D R{0.3, -0.2, 0.5};
  const RiemannSolution fwd = exact_riemann(L, R, GasModel{});
  const RiemannSolution rev =
      exact_riemann({R.rho, -R.u, R.p}, {L.rho, -L.u, L.p}, GasModel{});
  CHECK(fwd.p_star == doctest::Approx(rev.p_star).epsilon(1e-12));
  CHECK(fwd.u_star == doctest::Approx(-rev.u_star).epsilon(1e-12));
  for (double xi : {-1.0, -0.2, 0.1, 0.9}) {
    const Prim1D a = fwd.sample(xi);
    const Prim1D b = rev.sample(-xi);
    CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-11));
    CHECK(a.u == doctest::Approx(-b.u).epsilon(1e-11));
    CHECK(a.p == doctest::Approx(b.p).epsilon(1e-11));
  }
}

TEST_CASE("Riemann invariants hold through the left rarefaction fan") {
  const RiemannSolution sol = exact_riemann({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1}, GasModel{});
  const double g = 1.4;
  const double aL = std::sqrt(g);
  const double inv_ref = 0.0 + 2.0 * aL / (g - 1.0);
  const double entropy_ref = 1.0;  // p / rho^gamma of the left state
  const double head = -aL;
  const double tail = sol.u_star - aL * std::pow(sol.p_star, (g - 1.0) / (2.0 * g));
  for (int k = 0; k <= 20; ++k) {
    const double xi = head + (tail - head) * k / 20.0;
    const Prim1D s = sol.sample(xi);
    const double a = std::sqrt(g * s.p / s.rho);
    CHECK(std::abs(s.u + 2.0 * a / (g - 1.0) - inv_ref) <= 1e-10);
    CHECK(std::abs(s.p / std::pow(s.rho, g) - entropy_ref) <= 1e-10);
  }
}

TEST_CASE("vacuum-generating data is rejected") {
  CHECK_THROWS_AS(exact_riemann({1.0, -20.0, 0.4}, {1.0, 20.0, 0.4}, GasModel{}),
                  NumericalError);
}
