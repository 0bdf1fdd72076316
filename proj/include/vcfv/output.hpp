#ifndef VCFV_OUTPUT_HPP
#define VCFV_OUTPUT_HPP

#include <string>
#include <utility>
#include <vector>

#include "vcfv/config.hpp"
#include "vcfv/mesh.hpp"
#include "vcfv/solver.hpp"
#include "vcfv/verify.hpp"

namespace vcfv {

/// Per-cell field arrays of one time level.
struct Snapshot {
  double time = 0.0;
  long step = 0;
  std::vector<std::pair<std::string, std::vector<double>>> scalars;
  std::vector<std::pair<std::string, std::vector<Vec3>>> vectors;
};

/// density/velocity/pressure for Euler runs, u for scalar runs.
Snapshot make_snapshot(const Solver& solver);

/// VTK legacy ASCII UNSTRUCTURED_GRID with CELL_DATA arrays. The file is
/// written to a temporary name and renamed into place.
void write_vtk(const Mesh& mesh, const Snapshot& snap, const std::string& path);

/// Nearest-cell index for a sample point (brute force over centroids).
int nearest_cell(const Mesh& mesh, const Vec3& p);

/// CSV: s,x,y,z,<fields> with one row per sample point.
void write_line_probe(const Mesh& mesh, const Snapshot& snap, const LineProbeSpec& probe,
                      const std::string& path);

/// Pressure (or scalar) profile along a radial ray, reusable by the Taylor
/// blast check.
RadialProfile sample_radial(const Mesh& mesh, const Snapshot& snap,
                            const RadialProbeSpec& probe);
void write_radial_probe(const Mesh& mesh, const Snapshot& snap, const RadialProbeSpec& probe,
                        const std::string& path);

/// Machine-readable run summary (JSON).
void write_run_summary(const Solver& solver, const MonitorReport& report,
                       const std::string& path);

struct RunOutputs {
  long steps = 0;
  double final_time = 0.0;
  std::vector<std::string> snapshot_files;
};

/// Orchestrate a configured case: build mesh + solver, run, emit snapshots,
/// probes and the summary.
RunOutputs run_case(const RunConfig& cfg);

}  // namespace vcfv

#endif
