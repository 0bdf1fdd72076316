#ifndef VCFV_MESH_HPP
#define VCFV_MESH_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vcfv/vec.hpp"

namespace vcfv {

/// Simplex cell: triangle (d=2) or tetrahedron (d=3).
struct Cell {
  std::array<int, 4> v{-1, -1, -1, -1};  // vertex ids, first d+1 valid
  Vec3 centroid;
  double measure = 0.0;  // area (2-D) or volume (3-D)
  double h = 0.0;        // diameter: max vertex distance from centroid
};

/// Face between two cells, or between a cell and the boundary.
/// The normal has magnitude equal to the face measure and points out of
/// the left cell (into the right cell when present).
struct Face {
  std::array<int, 3> v{-1, -1, -1};  // vertex ids, first d valid
  int left = -1;
  int right = -1;        // -1 on boundary faces
  int boundary_tag = -1;  // index into Mesh::tag_names, -1 on interior faces
  Vec3 normal;
  Vec3 midpoint;
  double measure = 0.0;
  int opp_left = -1;   // vertex of left cell opposite this face
  int opp_right = -1;  // vertex of right cell opposite this face, -1 on boundary
  bool periodic = false;  // right cell reached through a periodic wrap
};

/// Incidence record: a cell seen from a vertex. For periodic meshes the
/// cell may sit across a wrap, in which case its centroid must be shifted
/// by `shift` to be geometrically adjacent to the vertex.
struct VertexCellRef {
  int cell = -1;
  Vec3 shift;
};

/// Immutable after construction. Connectivity plus all geometry the
/// scheme needs (centroids, measures, face normals, opposite-vertex map).
struct Mesh {
  int dim = 0;  // 2 or 3
  std::vector<Vec3> vertices;
  std::vector<Cell> cells;
  std::vector<Face> faces;
  std::vector<std::array<int, 4>> cell_faces;          // d+1 face ids per cell
  std::vector<std::vector<VertexCellRef>> vertex_cells;
  std::vector<std::string> tag_names;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_cells() const { return static_cast<int>(cells.size()); }
  int n_faces() const { return static_cast<int>(faces.size()); }
  int cell_vertex_count() const { return dim + 1; }
  int face_vertex_count() const { return dim; }

  int tag_index(const std::string& name) const;
};

/// Diagonal rule for splitting structured quads/hexes into simplices.
enum class BoxSplit { uniform, alternating };

struct BoxSpec {
  int dim = 2;
  std::array<double, 3> extents{1.0, 1.0, 1.0};
  std::array<int, 3> cells{1, 1, 1};
  BoxSplit split = BoxSplit::alternating;
  std::array<bool, 3> periodic{false, false, false};
  double perturb = 0.0;        // interior vertex jitter, fraction of local spacing
  std::uint64_t perturb_seed = 0;
};

/// Structured box partitioned into simplices: 2 triangles per quad in 2-D,
/// 6 tetrahedra per hex in 3-D. Boundary faces tagged xmin, xmax, ...
/// Periodic axes get their opposite boundary faces paired into interior
/// faces and vertex incidence wrapped across the boundary.
Mesh generate_box(const BoxSpec& spec);

/// Fill centroids, measures (fixing orientation by vertex swap), faces,
/// normals, midpoints, opposite-vertex map and vertex incidence. Cells and
/// vertices must already be set. Throws GeometryError on degenerate cells.
void compute_geometry(Mesh& mesh);

/// Per-boundary-tag face count.
struct MeshReport {
  double min_measure = 0.0;
  double max_measure = 0.0;
  double min_quality = 0.0;  // min dihedral (3-D) or min interior angle (2-D), radians
  double min_h = 0.0;
  double max_h = 0.0;
  int n_inverted = 0;  // cells whose measure came out non-positive
  std::map<std::string, int> boundary_face_counts;
};

MeshReport validate_mesh(const Mesh& mesh);

std::string format_report(const MeshReport& report);

}  // namespace vcfv

#endif
