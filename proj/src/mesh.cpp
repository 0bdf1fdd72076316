#include "vcfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "vcfv/errors.hpp"

namespace vcfv {

namespace {

// Signed measure with the stored vertex order.
double signed_measure(const Mesh& mesh, const Cell& c) {
  if (mesh.dim == 2) {
    const Vec3 a = mesh.vertices[c.v[0]];
    const Vec3 b = mesh.vertices[c.v[1]];
    const Vec3 d = mesh.vertices[c.v[2]];
    return 0.5 * ((b.x - a.x) * (d.y - a.y) - (b.y - a.y) * (d.x - a.x));
  }
  const Vec3 a = mesh.vertices[c.v[0]];
  const Vec3 e1 = mesh.vertices[c.v[1]] - a;
  const Vec3 e2 = mesh.vertices[c.v[2]] - a;
  const Vec3 e3 = mesh.vertices[c.v[3]] - a;
  return dot(cross(e1, e2), e3) / 6.0;
}

double max_edge_length(const Mesh& mesh, const Cell& c) {
  const int nv = mesh.cell_vertex_count();
  double m = 0.0;
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b)
      m = std::max(m, (mesh.vertices[c.v[a]] - mesh.vertices[c.v[b]]).norm());
  return m;
}

struct FaceKey {
  std::array<int, 3> v{-1, -1, -1};
  bool operator==(const FaceKey& o) const { return v == o.v; }
};

struct FaceKeyHash {
  std::size_t operator()(const FaceKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : k.v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

FaceKey make_key(std::array<int, 3> v, int n) {
  std::sort(v.begin(), v.begin() + n);
  for (int i = n; i < 3; ++i) v[i] = -1;
  return FaceKey{v};
}

}  // namespace

int Mesh::tag_index(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(tag_names.size()); ++i)
    if (tag_names[i] == name) return i;
  return -1;
}

void compute_geometry(Mesh& mesh) {
  const int d = mesh.dim;
  const int nv = d + 1;

  for (int ci = 0; ci < mesh.n_cells(); ++ci) {
    Cell& c = mesh.cells[ci];
    double vol = signed_measure(mesh, c);
    if (vol < 0.0) {
      std::swap(c.v[1], c.v[2]);
      vol = -vol;
    }
    const double edge = max_edge_length(mesh, c);
    if (!(vol > 1e-14 * std::pow(edge, d))) {
      std::ostringstream os;
      os << "degenerate cell " << ci << " (measure " << vol << ")";
      throw GeometryError(os.str());
    }
    c.measure = vol;
    Vec3 cen;
    for (int k = 0; k < nv; ++k) cen += mesh.vertices[c.v[k]];
    c.centroid = cen / static_cast<double>(nv);
    double h = 0.0;
    for (int k = 0; k < nv; ++k)
      h = std::max(h, (mesh.vertices[c.v[k]] - c.centroid).norm());
    c.h = h;
  }

  // Face identity is the sorted vertex tuple; interior vs boundary decided
  // by incidence count.
  mesh.faces.clear();
  std::unordered_map<FaceKey, int, FaceKeyHash> face_of;
  face_of.reserve(mesh.n_cells() * (nv + 1));
  for (int ci = 0; ci < mesh.n_cells(); ++ci) {
    const Cell& c = mesh.cells[ci];
    for (int k = 0; k < nv; ++k) {
      std::array<int, 3> fv{-1, -1, -1};
      int m = 0;
      for (int j = 0; j < nv; ++j)
        if (j != k) fv[m++] = c.v[j];
      const FaceKey key = make_key(fv, d);
      auto it = face_of.find(key);
      if (it == face_of.end()) {
        Face f;
        f.v = fv;
        f.left = ci;
        f.opp_left = c.v[k];
        face_of.emplace(key, mesh.n_faces());
        mesh.faces.push_back(f);
      } else {
        Face& f = mesh.faces[it->second];
        if (f.right != -1) {
          std::ostringstream os;
          os << "face shared by more than two cells near cell " << ci;
          throw GeometryError(os.str());
        }
        f.right = ci;
        f.opp_right = c.v[k];
      }
    }
  }

  for (Face& f : mesh.faces) {
    Vec3 mid;
    for (int k = 0; k < d; ++k) mid += mesh.vertices[f.v[k]];
    f.midpoint = mid / static_cast<double>(d);
    Vec3 n;
    if (d == 2) {
      const Vec3 t = mesh.vertices[f.v[1]] - mesh.vertices[f.v[0]];
      n = Vec3{t.y, -t.x, 0.0};
    } else {
      const Vec3 e1 = mesh.vertices[f.v[1]] - mesh.vertices[f.v[0]];
      const Vec3 e2 = mesh.vertices[f.v[2]] - mesh.vertices[f.v[0]];
      n = 0.5 * cross(e1, e2);
    }
    if (dot(n, f.midpoint - mesh.cells[f.left].centroid) < 0.0) n = -n;
    f.normal = n;
    f.measure = n.norm();
  }

  mesh.cell_faces.assign(mesh.n_cells(), {-1, -1, -1, -1});
  for (int fi = 0; fi < mesh.n_faces(); ++fi) {
    const Face& f = mesh.faces[fi];
    for (int side = 0; side < 2; ++side) {
      const int ci = side == 0 ? f.left : f.right;
      if (ci < 0) continue;
      const int opp = side == 0 ? f.opp_left : f.opp_right;
      const Cell& c = mesh.cells[ci];
      for (int k = 0; k < nv; ++k)
        if (c.v[k] == opp) mesh.cell_faces[ci][k] = fi;
    }
  }

  mesh.vertex_cells.assign(mesh.n_vertices(), {});
  for (int ci = 0; ci < mesh.n_cells(); ++ci)
    for (int k = 0; k < nv; ++k)
      mesh.vertex_cells[mesh.cells[ci].v[k]].push_back({ci, Vec3{}});
}

namespace {

const std::array<std::array<int, 4>, 6> kKuhnTets = {{
    {0, 1, 3, 7},  // x y z
    {0, 1, 5, 7},  // x z y
    {0, 2, 3, 7},  // y x z
    {0, 2, 6, 7},  // y z x
    {0, 4, 5, 7},  // z x y
    {0, 4, 6, 7},  // z y x
}};

int side_tag_of(const Mesh& mesh, const Face& f, const std::array<double, 3>& ext) {
  const double tol = 1e-12 * std::max({ext[0], ext[1], ext[2]});
  for (int axis = 0; axis < mesh.dim; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const double plane = side == 0 ? 0.0 : ext[axis];
      bool all = true;
      for (int k = 0; k < mesh.dim && all; ++k)
        all = std::abs(mesh.vertices[f.v[k]][axis] - plane) <= tol;
      if (all) return 2 * axis + side;
    }
  }
  return -1;
}

struct PointKey {
  long long a, b, c;
  bool operator==(const PointKey& o) const { return a == o.a && b == o.b && c == o.c; }
};
struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.a) * 73856093u;
    h ^= static_cast<std::size_t>(k.b) * 19349663u;
    h ^= static_cast<std::size_t>(k.c) * 83492791u;
    return h;
  }
};

PointKey quantize(const Vec3& p, double tol) {
  return {std::llround(p.x / tol), std::llround(p.y / tol), std::llround(p.z / tol)};
}

}  // namespace

Mesh generate_box(const BoxSpec& spec) {
  if (spec.dim != 2 && spec.dim != 3)
    throw ConfigError("box dimension must be 2 or 3");
  for (int a = 0; a < spec.dim; ++a) {
    if (spec.cells[a] < 1) throw ConfigError("box cell counts must be >= 1");
    if (!(spec.extents[a] > 0.0)) throw ConfigError("box extents must be positive");
  }

  Mesh mesh;
  mesh.dim = spec.dim;
  const int nx = spec.cells[0];
  const int ny = spec.cells[1];
  const int nz = spec.dim == 3 ? spec.cells[2] : 1;
  const int vx = nx + 1, vy = ny + 1;

  auto vid = [&](int i, int j, int k) { return i + vx * (j + vy * k); };

  const int kmaxv = spec.dim == 3 ? nz : 0;
  for (int k = 0; k <= kmaxv; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        mesh.vertices.push_back({spec.extents[0] * i / nx, spec.extents[1] * j / ny,
                                 spec.dim == 3 ? spec.extents[2] * k / nz : 0.0});

  if (spec.perturb > 0.0) {
    std::mt19937_64 rng(spec.perturb_seed);
    std::uniform_real_distribution<double> jitter(-spec.perturb, spec.perturb);
    const double hx = spec.extents[0] / nx, hy = spec.extents[1] / ny;
    const double hz = spec.dim == 3 ? spec.extents[2] / nz : 0.0;
    for (int k = 0; k <= kmaxv; ++k)
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
          const bool interior = i > 0 && i < nx && j > 0 && j < ny &&
                                (spec.dim == 2 || (k > 0 && k < nz));
          // draw in a fixed order so the mesh is reproducible
          const double dx = jitter(rng), dy = jitter(rng), dz = jitter(rng);
          if (!interior) continue;
          Vec3& p = mesh.vertices[vid(i, j, k)];
          p.x += dx * hx;
          p.y += dy * hy;
          if (spec.dim == 3) p.z += dz * hz;
        }
  }

  if (spec.dim == 2) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int a = vid(i, j, 0), b = vid(i + 1, j, 0);
        const int c = vid(i + 1, j + 1, 0), d = vid(i, j + 1, 0);
        const bool diag_ac =
            spec.split == BoxSplit::uniform || ((i + j) % 2 == 0);
        Cell c1, c2;
        if (diag_ac) {
          c1.v = {a, b, c, -1};
          c2.v = {a, c, d, -1};
        } else {
          c1.v = {a, b, d, -1};
          c2.v = {b, c, d, -1};
        }
        mesh.cells.push_back(c1);
        mesh.cells.push_back(c2);
      }
  } else {
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          // per-axis parity reflection keeps face diagonals conforming
          const bool rx = spec.split == BoxSplit::alternating && (i % 2 == 1);
          const bool ry = spec.split == BoxSplit::alternating && (j % 2 == 1);
          const bool rz = spec.split == BoxSplit::alternating && (k % 2 == 1);
          std::array<int, 8> corner;
          for (int n = 0; n < 8; ++n) {
            int l = n & 1, m = (n >> 1) & 1, p = (n >> 2) & 1;
            if (rx) l = 1 - l;
            if (ry) m = 1 - m;
            if (rz) p = 1 - p;
            corner[n] = vid(i + l, j + m, k + p);
          }
          for (const auto& t : kKuhnTets) {
            Cell c;
            c.v = {corner[t[0]], corner[t[1]], corner[t[2]], corner[t[3]]};
            mesh.cells.push_back(c);
          }
        }
  }

  compute_geometry(mesh);

  mesh.tag_names = {"xmin", "xmax", "ymin", "ymax"};
  if (spec.dim == 3) {
    mesh.tag_names.push_back("zmin");
    mesh.tag_names.push_back("zmax");
  }
  for (Face& f : mesh.faces) {
    if (f.right != -1) continue;
    f.boundary_tag = side_tag_of(mesh, f, spec.extents);
    if (f.boundary_tag < 0) throw GeometryError("boundary face not on a box side");
  }

  // Periodic axes: pair opposite boundary faces into interior faces and wrap
  // vertex incidence so every stencil sees a full neighbourhood.
  bool any_periodic = false;
  for (int a = 0; a < spec.dim; ++a) any_periodic |= spec.periodic[a];
  if (any_periodic) {
    const double tol = 1e-9 * std::max({spec.extents[0], spec.extents[1], spec.extents[2]});
    for (int axis = 0; axis < spec.dim; ++axis) {
      if (!spec.periodic[axis]) continue;
      Vec3 shift;
      if (axis == 0) shift = {spec.extents[0], 0, 0};
      if (axis == 1) shift = {0, spec.extents[1], 0};
      if (axis == 2) shift = {0, 0, spec.extents[2]};
      std::unordered_map<PointKey, int, PointKeyHash> max_side;
      for (int fi = 0; fi < mesh.n_faces(); ++fi) {
        const Face& f = mesh.faces[fi];
        if (f.boundary_tag == 2 * axis + 1)
          max_side.emplace(quantize(f.midpoint, tol), fi);
      }
      for (int fi = 0; fi < mesh.n_faces(); ++fi) {
        Face& fmin = mesh.faces[fi];
        if (fmin.boundary_tag != 2 * axis) continue;
        auto it = max_side.find(quantize(fmin.midpoint + shift, tol));
        if (it == max_side.end())
          throw GeometryError("periodic face pairing failed: no translated match");
        Face& fmax = mesh.faces[it->second];
        fmax.right = fmin.left;
        fmax.opp_right = fmin.opp_left;
        fmax.periodic = true;
        fmax.boundary_tag = -1;
        fmin.left = -1;  // mark for removal
      }
    }
    std::vector<Face> kept;
    kept.reserve(mesh.faces.size());
    for (Face& f : mesh.faces)
      if (f.left != -1) kept.push_back(f);
    mesh.faces = std::move(kept);
    // cell_faces indices are stale after the merge; rebuild
    mesh.cell_faces.assign(mesh.n_cells(), {-1, -1, -1, -1});
    const int nvc = mesh.cell_vertex_count();
    for (int fi = 0; fi < mesh.n_faces(); ++fi) {
      const Face& f = mesh.faces[fi];
      for (int side = 0; side < 2; ++side) {
        const int ci = side == 0 ? f.left : f.right;
        if (ci < 0) continue;
        const int opp = side == 0 ? f.opp_left : f.opp_right;
        for (int k = 0; k < nvc; ++k)
          if (mesh.cells[ci].v[k] == opp) mesh.cell_faces[ci][k] = fi;
      }
    }

    // Wrapped vertex incidence: add the twin's cells, shifted.
    std::unordered_map<PointKey, int, PointKeyHash> vertex_at;
    for (int v = 0; v < mesh.n_vertices(); ++v)
      vertex_at.emplace(quantize(mesh.vertices[v], tol), v);
    const std::vector<std::vector<VertexCellRef>> base = mesh.vertex_cells;
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      const Vec3 p = mesh.vertices[v];
      for (int mask = 1; mask < 8; ++mask) {
        Vec3 delta;
        bool applicable = true;
        for (int axis = 0; axis < 3; ++axis) {
          if (!(mask & (1 << axis))) continue;
          if (axis >= spec.dim || !spec.periodic[axis]) {
            applicable = false;
            break;
          }
          const double ext = spec.extents[axis];
          const double c = p[axis];
          double step = 0.0;
          if (std::abs(c) <= tol)
            step = ext;
          else if (std::abs(c - ext) <= tol)
            step = -ext;
          else {
            applicable = false;
            break;
          }
          if (axis == 0) delta.x = step;
          if (axis == 1) delta.y = step;
          if (axis == 2) delta.z = step;
        }
        if (!applicable) continue;
        auto it = vertex_at.find(quantize(p + delta, tol));
        if (it == vertex_at.end())
          throw GeometryError("periodic vertex wrap failed: no translated match");
        for (const VertexCellRef& ref : base[it->second])
          mesh.vertex_cells[v].push_back({ref.cell, -delta});
      }
    }
  }

  return mesh;
}

MeshReport validate_mesh(const Mesh& mesh) {
  MeshReport rep;
  rep.min_measure = std::numeric_limits<double>::max();
  rep.min_h = std::numeric_limits<double>::max();
  rep.min_quality = std::numeric_limits<double>::max();
  for (const Cell& c : mesh.cells) {
    rep.min_measure = std::min(rep.min_measure, c.measure);
    rep.max_measure = std::max(rep.max_measure, c.measure);
    rep.min_h = std::min(rep.min_h, c.h);
    rep.max_h = std::max(rep.max_h, c.h);
    if (!(c.measure > 0.0)) ++rep.n_inverted;
  }
  if (mesh.dim == 2) {
    for (const Cell& c : mesh.cells) {
      for (int k = 0; k < 3; ++k) {
        const Vec3 a = mesh.vertices[c.v[k]];
        const Vec3 b = mesh.vertices[c.v[(k + 1) % 3]];
        const Vec3 d = mesh.vertices[c.v[(k + 2) % 3]];
        const Vec3 e1 = unit(b - a), e2 = unit(d - a);
        rep.min_quality = std::min(rep.min_quality,
                                   std::acos(std::clamp(dot(e1, e2), -1.0, 1.0)));
      }
    }
  } else {
    for (int ci = 0; ci < mesh.n_cells(); ++ci) {
      const auto& cf = mesh.cell_faces[ci];
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          if (cf[a] < 0 || cf[b] < 0) continue;
          const Face& fa = mesh.faces[cf[a]];
          const Face& fb = mesh.faces[cf[b]];
          Vec3 na = unit(fa.normal), nb = unit(fb.normal);
          if (fa.left != ci) na = -na;  // make outward for this cell
          if (fb.left != ci) nb = -nb;
          const double dihedral =
              M_PI - std::acos(std::clamp(dot(na, nb), -1.0, 1.0));
          rep.min_quality = std::min(rep.min_quality, dihedral);
        }
    }
  }
  for (const Face& f : mesh.faces) {
    if (f.right != -1) continue;
    const std::string name =
        f.boundary_tag >= 0 && f.boundary_tag < static_cast<int>(mesh.tag_names.size())
            ? mesh.tag_names[f.boundary_tag]
            : std::string("untagged");
    ++rep.boundary_face_counts[name];
  }
  return rep;
}

std::string format_report(const MeshReport& rep) {
  std::ostringstream os;
  os << "cell measure: min " << rep.min_measure << ", max " << rep.max_measure << "\n";
  os << "cell diameter h: min " << rep.min_h << ", max " << rep.max_h << "\n";
  os << "min angle/dihedral: " << rep.min_quality * 180.0 / M_PI << " deg\n";
  os << "inverted cells: " << rep.n_inverted << "\n";
  os << "boundary faces:\n";
  for (const auto& [name, count] : rep.boundary_face_counts)
    os << "  " << name << ": " << count << "\n";
  return os.str();
}

}  // namespace vcfv
