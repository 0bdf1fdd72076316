#include "vcfv/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vcfv/errors.hpp"

namespace vcfv {

namespace {

// Tolerance below which the constraint matrix counts as singular. The
// pseudo-Laplacian matrix scales like h^(2d), so the cutoff is scaled by
// the stencil size; the consistent-Shepard matrix is dimensionless.
constexpr double kSingularTol = 1e-12;

// Weight sums this small (relative to the all-ones baseline) mean the
// constraints admit no usable minimizer; fall back instead of dividing by
// a vanishing sum.
constexpr double kSumTol = 1e-10;

struct Sym3 {
  // symmetric matrix, row-major upper triangle
  double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;
};

double det2(const Sym3& m) { return m.xx * m.yy - m.xy * m.xy; }

double det3(const Sym3& m) {
  return m.xx * (m.yy * m.zz - m.yz * m.yz) - m.xy * (m.xy * m.zz - m.yz * m.xz) +
         m.xz * (m.xy * m.yz - m.yy * m.xz);
}

// Cramer's rule for A*lambda = -b; caller checks the determinant.
Vec3 solve_cramer(const Sym3& m, const Vec3& b, int dim, double det) {
  if (dim == 2) {
    return {(-b.x * m.yy + b.y * m.xy) / det, (-b.y * m.xx + b.x * m.xy) / det, 0.0};
  }
  const double dx = -b.x * (m.yy * m.zz - m.yz * m.yz) -
                    m.xy * (-b.y * m.zz + b.z * m.yz) + m.xz * (-b.y * m.yz + b.z * m.yy);
  const double dy = m.xx * (-b.y * m.zz + b.z * m.yz) - (-b.x) * (m.xy * m.zz - m.yz * m.xz) +
                    m.xz * (m.xy * (-b.z) + b.y * m.xz);
  const double dz = m.xx * (m.yy * (-b.z) + b.y * m.yz) - m.xy * (m.xy * (-b.z) + b.y * m.xz) +
                    (-b.x) * (m.xy * m.yz - m.yy * m.xz);
  return {dx / det, dy / det, dz / det};
}

WeightSolve constrained_solve(std::span<const Vec3> dirs, int dim, double scale2d) {
  WeightSolve out;
  Sym3 m;
  Vec3 b;
  for (const Vec3& c : dirs) {
    m.xx += c.x * c.x;
    m.xy += c.x * c.y;
    m.xz += c.x * c.z;
    m.yy += c.y * c.y;
    m.yz += c.y * c.z;
    m.zz += c.z * c.z;
    b += c;
  }
  out.determinant = dim == 2 ? det2(m) : det3(m);
  if (!(std::abs(out.determinant) > kSingularTol * scale2d)) {
    out.singular = true;
    return out;
  }
  out.lagrange = solve_cramer(m, b, dim, out.determinant);
  out.weights.reserve(dirs.size());
  for (const Vec3& c : dirs) out.weights.push_back(1.0 + dot(out.lagrange, c));
  return out;
}

// Catastrophic cancellation in the sum of the weights that actually
// multiply the data makes the average meaningless.
void check_effective_sum(WeightSolve& out, std::span<const double> inv_scale) {
  if (out.singular) return;
  double sum = 0.0, abs_sum = 0.0, baseline = 0.0;
  for (std::size_t k = 0; k < out.weights.size(); ++k) {
    const double w = out.weights[k] * inv_scale[k];
    sum += w;
    abs_sum += std::abs(w);
    baseline += inv_scale[k];
  }
  if (!(sum > kSumTol * std::max(abs_sum, baseline))) out.degenerate_sum = true;
}

}  // namespace

const char* to_string(InterpScheme s) {
  switch (s) {
    case InterpScheme::volume: return "volume";
    case InterpScheme::inverse_distance: return "inverse_distance";
    case InterpScheme::pseudo_laplacian: return "pseudo_laplacian";
    case InterpScheme::consistent_shepard: return "consistent_shepard";
  }
  return "?";
}

WeightSolve pseudo_laplacian_solve(std::span<const Vec3> offsets, int dim) {
  double scale = 0.0;
  for (const Vec3& c : offsets) scale = std::max(scale, c.norm2());
  WeightSolve out = constrained_solve(offsets, dim, std::pow(scale, dim));  // (h^2)^d
  const std::vector<double> ones(offsets.size(), 1.0);
  check_effective_sum(out, ones);
  return out;
}

WeightSolve consistent_shepard_solve(std::span<const Vec3> offsets, int dim) {
  std::vector<Vec3> dirs;
  std::vector<double> inv_r;
  dirs.reserve(offsets.size());
  inv_r.reserve(offsets.size());
  for (const Vec3& c : offsets) {
    const double r = c.norm();
    dirs.push_back(c / r);
    inv_r.push_back(1.0 / r);
  }
  WeightSolve out = constrained_solve(dirs, dim, 1.0);
  check_effective_sum(out, inv_r);
  return out;
}

namespace {

VertexStencil base_stencil(const Mesh& mesh, int vertex) {
  VertexStencil st;
  st.vertex = vertex;
  const auto& refs = mesh.vertex_cells[vertex];
  if (refs.empty()) throw GeometryError("vertex without incident cells");
  const Vec3 p = mesh.vertices[vertex];
  st.cells.reserve(refs.size());
  st.offsets.reserve(refs.size());
  st.distances.reserve(refs.size());
  for (const VertexCellRef& ref : refs) {
    st.cells.push_back(ref.cell);
    const Vec3 off = mesh.cells[ref.cell].centroid + ref.shift - p;
    st.offsets.push_back(off);
    st.distances.push_back(off.norm());
  }
  return st;
}

void apply_inverse_distance_fallback(VertexStencil& st) {
  st.fallback_applied = true;
  const std::size_t n = st.cells.size();
  st.weights.assign(n, 1.0);
  if (st.scheme != InterpScheme::consistent_shepard)
    for (std::size_t k = 0; k < n; ++k) st.weights[k] = 1.0 / st.distances[k];
  // consistent_shepard divides by r_j at application time, so unity weights
  // already give inverse-distance averaging there
}

}  // namespace

VertexStencil simple_weights(const Mesh& mesh, int vertex, InterpScheme kind) {
  VertexStencil st = base_stencil(mesh, vertex);
  st.scheme = kind;
  const std::size_t n = st.cells.size();
  st.weights.resize(n);
  if (kind == InterpScheme::volume) {
    for (std::size_t k = 0; k < n; ++k) st.weights[k] = mesh.cells[st.cells[k]].measure;
  } else if (kind == InterpScheme::inverse_distance) {
    for (std::size_t k = 0; k < n; ++k) st.weights[k] = 1.0 / st.distances[k];
  } else {
    throw ConfigError("simple_weights expects volume or inverse_distance");
  }
  return st;
}

VertexStencil pseudo_laplacian_weights(const Mesh& mesh, int vertex) {
  VertexStencil st = base_stencil(mesh, vertex);
  st.scheme = InterpScheme::pseudo_laplacian;
  WeightSolve sol = pseudo_laplacian_solve(st.offsets, mesh.dim);
  st.determinant = sol.determinant;
  st.lagrange = sol.lagrange;
  if (sol.singular || sol.degenerate_sum)
    apply_inverse_distance_fallback(st);
  else
    st.weights = std::move(sol.weights);
  return st;
}

VertexStencil consistent_shepard_weights(const Mesh& mesh, int vertex) {
  VertexStencil st = base_stencil(mesh, vertex);
  st.scheme = InterpScheme::consistent_shepard;
  WeightSolve sol = consistent_shepard_solve(st.offsets, mesh.dim);
  st.determinant = sol.determinant;
  st.lagrange = sol.lagrange;
  if (sol.singular || sol.degenerate_sum)
    apply_inverse_distance_fallback(st);
  else
    st.weights = std::move(sol.weights);
  return st;
}

StencilSet build_all_stencils(const Mesh& mesh, InterpScheme scheme) {
  StencilSet set;
  set.stencils.reserve(mesh.n_vertices());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    switch (scheme) {
      case InterpScheme::volume:
      case InterpScheme::inverse_distance:
        set.stencils.push_back(simple_weights(mesh, v, scheme));
        break;
      case InterpScheme::pseudo_laplacian:
        set.stencils.push_back(pseudo_laplacian_weights(mesh, v));
        break;
      case InterpScheme::consistent_shepard:
        set.stencils.push_back(consistent_shepard_weights(mesh, v));
        break;
    }
  }

  InterpDiagnostics& d = set.diagnostics;
  d.min_weight = std::numeric_limits<double>::max();
  d.min_determinant = std::numeric_limits<double>::max();
  bool any_det = false;
  for (const VertexStencil& st : set.stencils) {
    bool negative = false;
    for (std::size_t k = 0; k < st.weights.size(); ++k) {
      const double w = st.effective_weight(k);
      d.min_weight = std::min(d.min_weight, w);
      negative |= w < 0.0;
    }
    if (negative) ++d.n_vertices_with_negative_weight;
    if (st.fallback_applied) ++d.n_fallbacks;
    if (st.scheme == InterpScheme::pseudo_laplacian ||
        st.scheme == InterpScheme::consistent_shepard) {
      d.min_determinant = std::min(d.min_determinant, st.determinant);
      any_det = true;
    }
  }
  if (!any_det) d.min_determinant = 0.0;
  if (set.stencils.empty()) d.min_weight = 0.0;
  return set;
}

double interpolate_value(const VertexStencil& st, std::span<const double> cell_values,
                         int ncomp, int comp) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < st.cells.size(); ++k) {
    const double w = st.effective_weight(static_cast<int>(k));
    num += w * cell_values[static_cast<std::size_t>(st.cells[k]) * ncomp + comp];
    den += w;
  }
  if (den == 0.0 || !std::isfinite(num / den)) {
    std::ostringstream os;
    os << "zero interpolation weight sum at vertex " << st.vertex;
    throw NumericalError(os.str());
  }
  return num / den;
}

void interpolate_field(std::span<const VertexStencil> stencils,
                       std::span<const double> cell_values, int ncomp,
                       std::span<double> vertex_values) {
  for (std::size_t v = 0; v < stencils.size(); ++v) {
    const VertexStencil& st = stencils[v];
    // one pass over the stencil handles all components
    double den = 0.0;
    for (std::size_t k = 0; k < st.cells.size(); ++k)
      den += st.effective_weight(static_cast<int>(k));
    if (den == 0.0) {
      std::ostringstream os;
      os << "zero interpolation weight sum at vertex " << st.vertex;
      throw NumericalError(os.str());
    }
    for (int c = 0; c < ncomp; ++c) {
      double num = 0.0;
      for (std::size_t k = 0; k < st.cells.size(); ++k)
        num += st.effective_weight(static_cast<int>(k)) *
               cell_values[static_cast<std::size_t>(st.cells[k]) * ncomp + c];
      vertex_values[v * ncomp + c] = num / den;
    }
  }
}

std::string InterpDiagnostics::to_text(InterpScheme scheme) const {
  std::ostringstream os;
  os << "scheme " << to_string(scheme) << ": " << n_vertices_with_negative_weight
     << " vertices with negative weights, min weight " << min_weight
     << ", min determinant " << min_determinant << ", " << n_fallbacks << " fallbacks";
  return os.str();
}

std::string InterpDiagnostics::to_csv_row(InterpScheme scheme) const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(scheme) << "," << n_vertices_with_negative_weight << "," << min_weight
     << "," << min_determinant << "," << n_fallbacks;
  return os.str();
}

}  // namespace vcfv
