#ifndef TTDVM_MESH_HPP_
#define TTDVM_MESH_HPP_

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ttdvm {

struct MeshFace {
  std::array<int, 4> vertices;
  double area = 0.0;
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
  int left = -1;    // cell the stored normal points out of
  int right = -1;   // second adjacent cell, or -1 for boundary faces
  int group = -1;   // boundary group index, -1 for interior faces
};

/// Hexahedral unstructured mesh with unique faces and all finite-volume
/// geometry derived at build time.  Immutable after construction.
struct UnstructuredMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 8>> cells;
  std::vector<MeshFace> faces;
  std::vector<double> volumes;
  std::vector<Eigen::Vector3d> centroids;
  /// Per cell: (face index, orientation sign); +1 iff the stored face
  /// normal points out of the cell.
  std::vector<std::vector<std::pair<int, int>>> cell_faces;
  std::vector<std::string> group_names;     // .bnd order of first appearance
  std::vector<std::vector<int>> group_faces;

  int cell_count() const { return static_cast<int>(cells.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  double total_volume() const;
};

struct BoundaryQuad {
  std::array<int, 4> vertices;
  std::string group;
};

/// Derive faces, adjacency, signs and geometry from raw connectivity.
/// Boundary quads tag the boundary faces; every boundary face must be
/// tagged exactly once.  Group order follows first appearance.
UnstructuredMesh build_mesh(std::vector<Eigen::Vector3d> vertices,
                            std::vector<std::array<int, 8>> cells,
                            const std::vector<BoundaryQuad>& boundary);

/// Read a StarCD ASCII mesh from a directory holding exactly one each of
/// *.vrt, *.cel, *.bnd.  Fields are whitespace-delimited; vertex lines are
/// "id x y z", cell lines "id v1..v8", boundary lines "id v1..v4 group";
/// trailing extra fields are ignored.
UnstructuredMesh read_starcd(const std::filesystem::path& dir);

/// FNV-1a digest of the three mesh input files (cache invalidation key).
std::uint64_t starcd_checksum(const std::filesystem::path& dir);

void write_mesh_cache(const UnstructuredMesh& mesh,
                      const std::filesystem::path& file,
                      std::uint64_t checksum);

/// Returns the cached mesh only when the format version and the checksum
/// both match; any mismatch or read failure yields nullopt so the caller
/// recomputes.
std::optional<UnstructuredMesh> load_mesh_cache(
    const std::filesystem::path& file, std::uint64_t checksum);

}  // namespace ttdvm

#endif  // TTDVM_MESH_HPP_
