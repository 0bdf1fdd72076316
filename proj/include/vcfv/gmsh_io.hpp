#ifndef VCFV_GMSH_IO_HPP
#define VCFV_GMSH_IO_HPP

#include <iosfwd>
#include <string>

#include "vcfv/mesh.hpp"

namespace vcfv {

/// Read a GMSH MSH 2.2 ASCII file. Simplex cells of a single dimension
/// (triangles or tetrahedra); lower-dimensional simplices become boundary
/// faces, named through physical groups.
Mesh load_gmsh(const std::string& path);
Mesh load_gmsh(std::istream& in);

/// Write MSH 2.2 ASCII with boundary faces carrying their tags as physical
/// groups. Round-trips through load_gmsh.
void write_gmsh(const Mesh& mesh, const std::string& path);
void write_gmsh(const Mesh& mesh, std::ostream& out);

}  // namespace vcfv

#endif
