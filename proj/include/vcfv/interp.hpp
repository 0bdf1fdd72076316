#ifndef VCFV_INTERP_HPP
#define VCFV_INTERP_HPP

#include <span>
#include <string>
#include <vector>

#include "vcfv/mesh.hpp"

namespace vcfv {

enum class InterpScheme { volume, inverse_distance, pseudo_laplacian, consistent_shepard };

const char* to_string(InterpScheme s);

/// Interpolation weights for one vertex over its incident cell centers.
///
/// `weights` stores w_j in the sense of the scheme: the measure |C_j| for
/// volume averaging, 1/r_j for inverse distance, and the unity-anchored
/// w_j for the two consistent schemes (the consistent Shepard formula
/// divides by r_j inside both sums at application time). When a fallback
/// was applied the weights are replaced so that application-time logic
/// produces plain inverse-distance averaging.
struct VertexStencil {
  int vertex = -1;
  std::vector<int> cells;
  std::vector<Vec3> offsets;     // cell centroid minus vertex position
  std::vector<double> distances; // r_j = |offset_j|, all > 0
  std::vector<double> weights;
  Vec3 lagrange;
  double determinant = 0.0;  // constraint-matrix determinant (consistent schemes)
  InterpScheme scheme = InterpScheme::volume;
  bool fallback_applied = false;

  /// Sign-carrying weight actually multiplying U_j.
  double effective_weight(int k) const {
    return scheme == InterpScheme::consistent_shepard ? weights[k] / distances[k]
                                                      : weights[k];
  }
};

struct InterpDiagnostics {
  int n_vertices_with_negative_weight = 0;
  double min_weight = 0.0;
  double min_determinant = 0.0;  // over stencils that solved a constraint system
  int n_fallbacks = 0;

  std::string to_text(InterpScheme scheme) const;
  std::string to_csv_row(InterpScheme scheme) const;  // scheme,n_negative,min_weight,min_det,n_fallback
};

/// Weight solves on a bare offset list (used directly by the verification
/// drivers; the mesh-based operations below wrap these).
struct WeightSolve {
  std::vector<double> weights;
  Vec3 lagrange;
  double determinant = 0.0;
  bool singular = false;  // constraint matrix below the singularity tolerance
  bool degenerate_sum = false;  // weight sum collapsed, interpolation impossible
};

WeightSolve pseudo_laplacian_solve(std::span<const Vec3> offsets, int dim);
WeightSolve consistent_shepard_solve(std::span<const Vec3> offsets, int dim);

VertexStencil simple_weights(const Mesh& mesh, int vertex, InterpScheme kind);
VertexStencil pseudo_laplacian_weights(const Mesh& mesh, int vertex);
VertexStencil consistent_shepard_weights(const Mesh& mesh, int vertex);

struct StencilSet {
  std::vector<VertexStencil> stencils;
  InterpDiagnostics diagnostics;
};

StencilSet build_all_stencils(const Mesh& mesh, InterpScheme scheme);

/// Weighted average of cell values per the stencil's scheme. `cell_values`
/// is strided: value of component c in cell i at cell_values[i*ncomp + c].
/// Output is strided the same way over vertices.
void interpolate_field(std::span<const VertexStencil> stencils,
                       std::span<const double> cell_values, int ncomp,
                       std::span<double> vertex_values);

/// Single-vertex version.
double interpolate_value(const VertexStencil& st, std::span<const double> cell_values,
                         int ncomp = 1, int comp = 0);

}  // namespace vcfv

#endif
