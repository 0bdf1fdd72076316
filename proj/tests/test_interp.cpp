#include <doctest.h>

#include <cmath>
#include <random>

#include "vcfv/errors.hpp"
#include "vcfv/interp.hpp"
#include "vcfv/mesh.hpp"

using namespace vcfv;

namespace {

Mesh perturbed_box(int dim, int n, double perturb, std::uint64_t seed,
                   bool periodic = false) {
  BoxSpec spec;
  spec.dim = dim;
  spec.cells = {n, n, dim == 3 ? n : 1};
  spec.perturb = perturb;
  spec.perturb_seed = seed;
  if (periodic) spec.periodic = {true, true, dim == 3};
  return generate_box(spec);
}

double apply_linear(const VertexStencil& st, const Mesh& mesh, double a, const Vec3& g) {
  // periodic ghost incidences shift the centroid, so evaluate through offsets
  double num = 0.0, den = 0.0;
  const Vec3 p = mesh.vertices[st.vertex];
  for (std::size_t k = 0; k < st.cells.size(); ++k) {
    const double w = st.effective_weight(static_cast<int>(k));
    num += w * (a + dot(g, p + st.offsets[k]));
    den += w;
  }
  return num / den;
}

}  // namespace

TEST_CASE("volume weights: single cell and equal-measure mean") {
  BoxSpec spec;
  spec.dim = 2;
  spec.cells = {1, 1, 1};
  spec.split = BoxSplit::uniform;
  const Mesh mesh = generate_box(spec);

  // corner vertex (1,0) belongs to one triangle only
  int lone = -1;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (mesh.vertex_cells[v].size() == 1) lone = v;
  REQUIRE(lone >= 0);
  const VertexStencil st = simple_weights(mesh, lone, InterpScheme::volume);
  CHECK(st.weights.size() == 1);
  const std::vector<double> vals{3.25, -7.5};
  CHECK(interpolate_value(st, vals) ==
        doctest::Approx(vals[st.cells[0]]).epsilon(1e-14));

  // the diagonal vertices see both (equal-area) triangles
  int shared = -1;
  for (int v = 0; v < mesh.n_vertices(); ++v)
    if (mesh.vertex_cells[v].size() == 2) shared = v;
  REQUIRE(shared >= 0);
  const VertexStencil st2 = simple_weights(mesh, shared, InterpScheme::volume);
  CHECK(st2.weights[0] == doctest::Approx(st2.weights[1]).epsilon(1e-14));
  CHECK(interpolate_value(st2, vals) ==
        doctest::Approx(0.5 * (vals[0] + vals[1])).epsilon(1e-14));
}

TEST_CASE("all schemes reproduce constants") {
  const Mesh mesh = perturbed_box(3, 3, 0.15, 77);
  std::vector<double> vals(mesh.n_cells(), 4.8125);
  for (InterpScheme s : {InterpScheme::volume, InterpScheme::inverse_distance,
                         InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
    const StencilSet set = build_all_stencils(mesh, s);
    std::vector<double> vert(mesh.n_vertices());
    interpolate_field(set.stencils, vals, 1, vert);
    for (double v : vert) CHECK(v == doctest::Approx(4.8125).epsilon(1e-13));
  }
}

TEST_CASE("symmetric stencil: moment vector vanishes, all weights one") {
  const std::vector<Vec3> offsets{{0.7, 0, 0}, {-0.7, 0, 0}, {0, 0.7, 0}, {0, -0.7, 0}};
  const WeightSolve pl = pseudo_laplacian_solve(offsets, 2);
  REQUIRE(!pl.singular);
  CHECK(pl.lagrange.norm() <= 1e-14);
  for (double w : pl.weights) CHECK(w == doctest::Approx(1.0).epsilon(1e-14));

  const std::vector<Vec3> unit_off{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  const WeightSolve cs = consistent_shepard_solve(unit_off, 2);
  REQUIRE(!cs.singular);
  CHECK(cs.lagrange.norm() <= 1e-14);
  for (double w : cs.weights) CHECK(w == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("consistent schemes are exact for linear fields") {
  // periodic wrap gives full stencils everywhere; no fallback vertices
  const Mesh mesh2 = perturbed_box(2, 8, 0.18, 123, true);
  const Mesh mesh3 = perturbed_box(3, 4, 0.15, 321, true);
  for (const Mesh* m : {&mesh2, &mesh3}) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (InterpScheme s : {InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
      const StencilSet set = build_all_stencils(*m, s);
      CHECK(set.diagnostics.n_fallbacks == 0);
      for (int trial = 0; trial < 5; ++trial) {
        const double a = unif(rng);
        const Vec3 g{unif(rng), unif(rng), m->dim == 3 ? unif(rng) : 0.0};
        for (int v = 0; v < m->n_vertices(); v += 7) {
          const double exact = a + dot(g, m->vertices[v]);
          const double got = apply_linear(set.stencils[v], *m, a, g);
          CHECK(std::abs(got - exact) <= 1e-10 * std::max(1.0, std::abs(exact)));
        }
      }
    }
  }
}

TEST_CASE("consistency conditions hold on non-fallback stencils") {
  const Mesh mesh = perturbed_box(3, 4, 0.2, 55);
  for (InterpScheme s : {InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
    const StencilSet set = build_all_stencils(mesh, s);
    for (const VertexStencil& st : set.stencils) {
      if (st.fallback_applied) continue;
      Vec3 moment;
      double scale = 0.0;
      for (std::size_t k = 0; k < st.cells.size(); ++k) {
        Vec3 c = st.offsets[k];
        if (s == InterpScheme::consistent_shepard) c = c / st.distances[k];
        moment += st.weights[k] * c;
        scale += std::abs(st.weights[k]) * c.norm();
      }
      CHECK(moment.norm() <= 1e-10 * std::max(scale, 1e-30));
    }
  }
}

TEST_CASE("pseudo-Laplacian determinant scales as s^(2d)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int dim : {2, 3}) {
    std::vector<Vec3> offsets;
    for (int k = 0; k < 8; ++k)
      offsets.push_back({unif(rng), unif(rng), dim == 3 ? unif(rng) : 0.0});
    const WeightSolve base = pseudo_laplacian_solve(offsets, dim);
    REQUIRE(!base.singular);
    for (double s : {1e-2, 3.0, 1e2}) {
      std::vector<Vec3> scaled;
      for (const Vec3& c : offsets) scaled.push_back(s * c);
      const WeightSolve sol = pseudo_laplacian_solve(scaled, dim);
      const double expect = std::pow(s, 2 * dim) * base.determinant;
      CHECK(std::abs(sol.determinant / expect - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("consistent Shepard is scale invariant") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<Vec3> offsets;
  for (int k = 0; k < 9; ++k) offsets.push_back({unif(rng), unif(rng), unif(rng)});
  const WeightSolve base = consistent_shepard_solve(offsets, 3);
  REQUIRE(!base.singular);
  for (double s : {1e-3, 7.0, 1e4}) {
    std::vector<Vec3> scaled;
    for (const Vec3& c : offsets) scaled.push_back(s * c);
    const WeightSolve sol = consistent_shepard_solve(scaled, 3);
    CHECK(std::abs(sol.determinant - base.determinant) <= 1e-12 * std::abs(base.determinant));
    for (std::size_t k = 0; k < sol.weights.size(); ++k)
      CHECK(std::abs(sol.weights[k] - base.weights[k]) <= 1e-13);
  }
}

TEST_CASE("volume scheme never yields negative weights") {
  const Mesh mesh = perturbed_box(3, 4, 0.2, 99);
  const StencilSet set = build_all_stencils(mesh, InterpScheme::volume);
  CHECK(set.diagnostics.n_vertices_with_negative_weight == 0);
  CHECK(set.diagnostics.min_weight > 0.0);
}

TEST_CASE("one-cell mesh: every stencil collapses to a single unit weight") {
  Mesh mesh;
  mesh.dim = 2;
  mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  Cell c;
  c.v = {0, 1, 2, -1};
  mesh.cells = {c};
  compute_geometry(mesh);
  for (InterpScheme s : {InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
    const StencilSet set = build_all_stencils(mesh, s);
    std::vector<double> vals{2.5};
    for (const VertexStencil& st : set.stencils) {
      CHECK(st.fallback_applied);
      CHECK(st.cells.size() == 1);
      CHECK(interpolate_value(st, vals) == doctest::Approx(2.5).epsilon(1e-14));
    }
  }
}

TEST_CASE("positive weights keep the interpolant inside the data range") {
  const Mesh mesh = perturbed_box(2, 6, 0.15, 31, true);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  std::vector<double> vals(mesh.n_cells());
  for (double& v : vals) v = unif(rng);
  for (InterpScheme s : {InterpScheme::volume, InterpScheme::inverse_distance,
                         InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
    const StencilSet set = build_all_stencils(mesh, s);
    for (const VertexStencil& st : set.stencils) {
      bool positive = true;
      double lo = 1e300, hi = -1e300;
      for (std::size_t k = 0; k < st.cells.size(); ++k) {
        positive &= st.effective_weight(static_cast<int>(k)) > 0.0;
        lo = std::min(lo, vals[st.cells[k]]);
        hi = std::max(hi, vals[st.cells[k]]);
      }
      if (!positive) continue;
      const double v = interpolate_value(st, vals);
      const double ulp = 8.0 * 1e-16 * std::max(std::abs(lo), std::abs(hi));
      CHECK(v >= lo - ulp);
      CHECK(v <= hi + ulp);
    }
  }
}

TEST_CASE("volume averaging on a skewed stencil is only first order") {
  const Mesh mesh = perturbed_box(2, 4, 0.22, 67);
  const StencilSet set = build_all_stencils(mesh, InterpScheme::volume);
  std::vector<double> vals(mesh.n_cells());
  for (int i = 0; i < mesh.n_cells(); ++i)
    vals[i] = 2.0 + 3.0 * mesh.cells[i].centroid.x - mesh.cells[i].centroid.y;
  double worst = 0.0;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const double exact = 2.0 + 3.0 * mesh.vertices[v].x - mesh.vertices[v].y;
    worst = std::max(worst, std::abs(interpolate_value(set.stencils[v], vals) - exact));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("negative-weight diagnostics on the channel mesh") {
  // perturbed channel, as in the shock-tube setup. One-sided boundary
  // stencils force a negative weight under either scheme, so the schemes
  // are compared away from the boundary.
  BoxSpec spec;
  spec.dim = 3;
  spec.extents = {1.0, 0.1, 0.1};
  spec.cells = {40, 4, 4};
  spec.perturb = 0.15;
  spec.perturb_seed = 2024;
  const Mesh mesh = generate_box(spec);
  auto interior = [&](int v) {
    const Vec3 p = mesh.vertices[v];
    const double tol = 1e-9;
    return p.x > tol && p.x < 1 - tol && p.y > tol && p.y < 0.1 - tol && p.z > tol &&
           p.z < 0.1 - tol;
  };
  const StencilSet pl = build_all_stencils(mesh, InterpScheme::pseudo_laplacian);
  const StencilSet cs = build_all_stencils(mesh, InterpScheme::consistent_shepard);
  int pl_neg = 0, cs_neg = 0;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (!interior(v)) continue;
    auto has_negative = [](const VertexStencil& st) {
      for (std::size_t k = 0; k < st.weights.size(); ++k)
        if (st.effective_weight(static_cast<int>(k)) < 0.0) return true;
      return false;
    };
    pl_neg += has_negative(pl.stencils[v]);
    cs_neg += has_negative(cs.stencils[v]);
  }
  CHECK(cs_neg <= pl_neg);
  // the pseudo-Laplacian determinant lives on the h^6 scale, the
  // consistent-Shepard one on the O(1) scale
  CHECK(pl.diagnostics.min_determinant < 1e-6);
  CHECK(cs.diagnostics.min_determinant > 1e-3);
  const std::string row = cs.diagnostics.to_csv_row(InterpScheme::consistent_shepard);
  CHECK(row.find("consistent_shepard,") == 0);
  const std::string text = pl.diagnostics.to_text(InterpScheme::pseudo_laplacian);
  CHECK(text.find("pseudo_laplacian") != std::string::npos);
  CHECK(text.find("negative weights") != std::string::npos);
}

TEST_CASE("consistent Shepard keeps weights positive more often on graded stencils") {
  // spatially graded, angularly random stencils: the pseudo-Laplacian
  // constraints see the radii, the consistent-Shepard ones only the angles
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  std::uniform_real_distribution<double> logr(-2.0, 0.0);
  std::uniform_real_distribution<double> zdir(-1.0, 1.0);
  int pl_neg = 0, cs_neg = 0, usable = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<Vec3> off;
    const int m = 6 + trial % 5;
    for (int k = 0; k < m; ++k) {
      const double z = zdir(rng), phi = ang(rng), s = std::sqrt(1.0 - z * z);
      const double r = std::pow(10.0, logr(rng));
      off.push_back({r * s * std::cos(phi), r * s * std::sin(phi), r * z});
    }
    const WeightSolve pl = pseudo_laplacian_solve(off, 3);
    const WeightSolve cs = consistent_shepard_solve(off, 3);
    if (pl.singular || pl.degenerate_sum || cs.singular || cs.degenerate_sum) continue;
    ++usable;
    bool pn = false, cn = false;
    for (double w : pl.weights) pn |= w < 0.0;
    for (double w : cs.weights) cn |= w < 0.0;
    pl_neg += pn;
    cs_neg += cn;
  }
  CHECK(usable > 2500);
  CHECK(cs_neg < pl_neg);
}

TEST_CASE("interpolation weight sum never vanishes (fallback covers corners)") {
  // box corners have exactly d incident cells; the constrained minimizer
  // there is all-zero weights, which must fall back cleanly
  BoxSpec spec;
  spec.dim = 2;
  spec.cells = {4, 4, 1};
  spec.split = BoxSplit::uniform;
  const Mesh mesh = generate_box(spec);
  for (InterpScheme s : {InterpScheme::pseudo_laplacian, InterpScheme::consistent_shepard}) {
    const StencilSet set = build_all_stencils(mesh, s);
    std::vector<double> vals(mesh.n_cells(), 1.0);
    for (int i = 0; i < mesh.n_cells(); ++i) vals[i] = mesh.cells[i].centroid.x;
    std::vector<double> vert(mesh.n_vertices());
    interpolate_field(set.stencils, vals, 1, vert);  // must not throw
    CHECK(set.diagnostics.n_fallbacks > 0);
    CHECK(set.diagnostics.n_fallbacks <= 4);
  }
}
