#include "vcfv/gmsh_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>

#include "vcfv/errors.hpp"

namespace vcfv {

namespace {

// MSH 2.2 element types we understand.
constexpr int kLine = 1;
constexpr int kTriangle = 2;
constexpr int kTet = 4;
constexpr int kPoint = 15;

int element_node_count(int type) {
  switch (type) {
    case kLine: return 2;
    case kTriangle: return 3;
    case kTet: return 4;
    case kPoint: return 1;
    default: return -1;
  }
}

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
      line.pop_back();
    if (!line.empty()) return line;
  }
  return {};
}

struct RawElement {
  int id = 0;
  int type = 0;
  int physical = 0;
  std::array<int, 4> nodes{-1, -1, -1, -1};
};

}  // namespace

Mesh load_gmsh(std::istream& in) {
  std::string line = next_content_line(in);
  if (line != "$MeshFormat") throw ParseError("expected $MeshFormat");
  line = next_content_line(in);
  {
    std::istringstream ls(line);
    std::string version;
    int file_type = -1, data_size = 0;
    ls >> version >> file_type >> data_size;
    if (version.rfind("2.2", 0) != 0)
      throw ParseError("unsupported MSH version " + version + " (only 2.2 ASCII is supported)");
    if (file_type != 0)
      throw ParseError("binary MSH files are not supported");
  }
  if (next_content_line(in) != "$EndMeshFormat")
    throw ParseError("expected $EndMeshFormat");

  std::map<std::pair<int, int>, std::string> physical_names;  // (dim, tag) -> name
  std::unordered_map<long long, int> node_index;               // file id -> 0-based
  std::vector<Vec3> nodes;
  std::vector<RawElement> elements;

  while (true) {
    line = next_content_line(in);
    if (line.empty()) break;
    if (line == "$PhysicalNames") {
      const int n = std::stoi(next_content_line(in));
      for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_content_line(in));
        int dim = 0, tag = 0;
        std::string name;
        ls >> dim >> tag;
        std::getline(ls, name);
        const auto a = name.find('"');
        const auto b = name.rfind('"');
        if (a != std::string::npos && b != std::string::npos && b > a)
          name = name.substr(a + 1, b - a - 1);
        physical_names[{dim, tag}] = name;
      }
      if (next_content_line(in) != "$EndPhysicalNames")
        throw ParseError("expected $EndPhysicalNames");
    } else if (line == "$Nodes") {
      const int n = std::stoi(next_content_line(in));
      nodes.reserve(n);
      for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_content_line(in));
        long long id = 0;
        double x = 0, y = 0, z = 0;
        if (!(ls >> id >> x >> y >> z)) throw ParseError("malformed node line");
        node_index[id] = static_cast<int>(nodes.size());
        nodes.push_back({x, y, z});
      }
      if (next_content_line(in) != "$EndNodes") throw ParseError("expected $EndNodes");
    } else if (line == "$Elements") {
      const int n = std::stoi(next_content_line(in));
      elements.reserve(n);
      for (int i = 0; i < n; ++i) {
        std::istringstream ls(next_content_line(in));
        RawElement e;
        int ntags = 0;
        if (!(ls >> e.id >> e.type >> ntags)) throw ParseError("malformed element line");
        for (int t = 0; t < ntags; ++t) {
          int tag = 0;
          ls >> tag;
          if (t == 0) e.physical = tag;
        }
        const int nn = element_node_count(e.type);
        if (nn < 0) {
          std::ostringstream os;
          os << "unsupported element type " << e.type << " (element " << e.id
             << "); only simplices are supported";
          throw ParseError(os.str());
        }
        for (int k = 0; k < nn; ++k) {
          long long id = 0;
          if (!(ls >> id)) throw ParseError("truncated element line");
          auto it = node_index.find(id);
          if (it == node_index.end()) throw ParseError("element references unknown node");
          e.nodes[k] = it->second;
        }
        elements.push_back(e);
      }
      if (next_content_line(in) != "$EndElements") throw ParseError("expected $EndElements");
    } else if (!line.empty() && line[0] == '$') {
      // skip unknown section
      const std::string end = "$End" + line.substr(1);
      while (true) {
        const std::string s = next_content_line(in);
        if (s.empty()) throw ParseError("unterminated section " + line);
        if (s == end) break;
      }
    }
  }

  const bool has_tets = std::any_of(elements.begin(), elements.end(),
                                    [](const RawElement& e) { return e.type == kTet; });
  const bool has_tris = std::any_of(elements.begin(), elements.end(),
                                    [](const RawElement& e) { return e.type == kTriangle; });
  const bool has_lines = std::any_of(elements.begin(), elements.end(),
                                     [](const RawElement& e) { return e.type == kLine; });

  Mesh mesh;
  int cell_type = 0, bface_type = 0;
  if (has_tets) {
    mesh.dim = 3;
    cell_type = kTet;
    bface_type = kTriangle;
  } else if (has_tris) {
    mesh.dim = 2;
    cell_type = kTriangle;
    bface_type = kLine;
    if (has_lines) {
      // lines are boundary faces of the triangulation, nothing to check here
    }
  } else {
    throw ParseError("no triangle or tetrahedron cells found");
  }

  mesh.vertices = nodes;
  for (const RawElement& e : elements) {
    if (e.type != cell_type) continue;
    Cell c;
    c.v = e.nodes;
    mesh.cells.push_back(c);
  }
  if (mesh.cells.empty()) throw ParseError("no cells of the mesh dimension found");

  compute_geometry(mesh);

  // Boundary tags from physical groups of the (d-1)-dimensional elements.
  std::map<int, int> phys_to_tag;  // physical id -> tag index
  auto tag_for = [&](int physical) {
    auto it = phys_to_tag.find(physical);
    if (it != phys_to_tag.end()) return it->second;
    std::string name;
    auto nit = physical_names.find({mesh.dim - 1, physical});
    if (nit != physical_names.end())
      name = nit->second;
    else {
      std::ostringstream os;
      os << "physical_" << physical;
      name = os.str();
    }
    mesh.tag_names.push_back(name);
    const int idx = static_cast<int>(mesh.tag_names.size()) - 1;
    phys_to_tag[physical] = idx;
    return idx;
  };

  std::unordered_map<long long, int> bkey_to_face;
  auto face_hash = [&](std::array<int, 3> v) {
    std::sort(v.begin(), v.begin() + mesh.dim);
    long long h = 0;
    for (int k = 0; k < mesh.dim; ++k) h = h * 1000003ll + v[k] + 1;
    return h;
  };
  for (int fi = 0; fi < mesh.n_faces(); ++fi)
    if (mesh.faces[fi].right == -1)
      bkey_to_face[face_hash(mesh.faces[fi].v)] = fi;

  for (const RawElement& e : elements) {
    if (e.type != bface_type) continue;
    std::array<int, 3> v{e.nodes[0], e.nodes[1], mesh.dim == 3 ? e.nodes[2] : -1};
    if (mesh.dim == 2) v[2] = -1;
    auto it = bkey_to_face.find(face_hash(v));
    if (it == bkey_to_face.end()) continue;  // interior or not matching a boundary face
    if (e.physical != 0) mesh.faces[it->second].boundary_tag = tag_for(e.physical);
  }

  int untagged_idx = -1;
  for (Face& f : mesh.faces) {
    if (f.right != -1 || f.boundary_tag >= 0) continue;
    if (untagged_idx < 0) {
      mesh.tag_names.push_back("untagged");
      untagged_idx = static_cast<int>(mesh.tag_names.size()) - 1;
    }
    f.boundary_tag = untagged_idx;
  }

  return mesh;
}

Mesh load_gmsh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file " + path);
  return load_gmsh(in);
}

void write_gmsh(const Mesh& mesh, std::ostream& out) {
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n";
  if (!mesh.tag_names.empty()) {
    out << "$PhysicalNames\n" << mesh.tag_names.size() << "\n";
    for (int i = 0; i < static_cast<int>(mesh.tag_names.size()); ++i)
      out << (mesh.dim - 1) << " " << (i + 1) << " \"" << mesh.tag_names[i] << "\"\n";
    out << "$EndPhysicalNames\n";
  }
  out << "$Nodes\n" << mesh.n_vertices() << "\n";
  out << std::setprecision(17);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Vec3& p = mesh.vertices[v];
    out << (v + 1) << " " << p.x << " " << p.y << " " << p.z << "\n";
  }
  out << "$EndNodes\n";

  int n_bfaces = 0;
  for (const Face& f : mesh.faces)
    if (f.right == -1) ++n_bfaces;
  out << "$Elements\n" << (n_bfaces + mesh.n_cells()) << "\n";
  int eid = 1;
  const int bface_type = mesh.dim == 3 ? kTriangle : kLine;
  for (const Face& f : mesh.faces) {
    if (f.right != -1) continue;
    out << eid++ << " " << bface_type << " 2 " << (f.boundary_tag + 1) << " 1";
    for (int k = 0; k < mesh.dim; ++k) out << " " << (f.v[k] + 1);
    out << "\n";
  }
  const int cell_type = mesh.dim == 3 ? kTet : kTriangle;
  for (const Cell& c : mesh.cells) {
    out << eid++ << " " << cell_type << " 2 0 1";
    for (int k = 0; k < mesh.dim + 1; ++k) out << " " << (c.v[k] + 1);
    out << "\n";
  }
  out << "$EndElements\n";
}

void write_gmsh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_gmsh(mesh, out);
}

}  // namespace vcfv
