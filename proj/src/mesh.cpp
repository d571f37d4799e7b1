#include "ttdvm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ttdvm {

namespace {

using Eigen::Vector3d;

// Local faces of a hexahedron in StarCD/VTK vertex order (0-3 bottom,
// 4-7 top), each quad wound so its normal points out of the cell.
constexpr std::array<std::array<int, 4>, 6> kHexFaces = {{
    {0, 3, 2, 1},  // bottom
    {4, 5, 6, 7},  // top
    {0, 1, 5, 4},
    {1, 2, 6, 5},
    {2, 3, 7, 6},
    {3, 0, 4, 7},
}};

struct QuadGeometry {
  double area;             // scalar sum of the two triangle areas
  Vector3d area_vector;    // sum of triangle vector areas
};

QuadGeometry quad_geometry(const Vector3d& p0, const Vector3d& p1,
                           const Vector3d& p2, const Vector3d& p3) {
  Vector3d t1 = 0.5 * (p1 - p0).cross(p2 - p0);
  Vector3d t2 = 0.5 * (p2 - p0).cross(p3 - p0);
  return {t1.norm() + t2.norm(), t1 + t2};
}

std::array<int, 4> sorted_key(const std::array<int, 4>& v) {
  std::array<int, 4> k = v;
  std::sort(k.begin(), k.end());
  return k;
}

[[noreturn]] void fail(const std::filesystem::path& file, int line,
                       const std::string& what) {
  throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " +
                           what);
}

std::filesystem::path find_single(const std::filesystem::path& dir,
                                  const std::string& ext) {
  std::filesystem::path found;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ext) {
      if (!found.empty())
        throw std::runtime_error("multiple " + ext + " files in " +
                                 dir.string());
      found = e.path();
    }
  }
  if (found.empty())
    throw std::runtime_error("no " + ext + " file in " + dir.string());
  return found;
}

}  // namespace

double UnstructuredMesh::total_volume() const {
  double v = 0.0;
  for (double x : volumes) v += x;
  return v;
}

UnstructuredMesh build_mesh(std::vector<Vector3d> vertices,
                            std::vector<std::array<int, 8>> cells,
                            const std::vector<BoundaryQuad>& boundary) {
  UnstructuredMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.cells = std::move(cells);
  const int nc = mesh.cell_count();
  mesh.cell_faces.resize(nc);
  mesh.volumes.resize(nc);
  mesh.centroids.resize(nc);

  std::map<std::array<int, 4>, int> face_index;
  for (int c = 0; c < nc; ++c) {
    const auto& cv = mesh.cells[c];
    for (int v : cv)
      if (v < 0 || v >= static_cast<int>(mesh.vertices.size()))
        throw std::runtime_error("cell " + std::to_string(c) +
                                 " references missing vertex");
    {
      std::array<int, 8> s = cv;
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::runtime_error("cell " + std::to_string(c) +
                                 " is degenerate (repeated vertex)");
    }

    for (const auto& lf : kHexFaces) {
      std::array<int, 4> quad = {cv[lf[0]], cv[lf[1]], cv[lf[2]], cv[lf[3]]};
      auto key = sorted_key(quad);
      auto it = face_index.find(key);
      if (it == face_index.end()) {
        MeshFace f;
        f.vertices = quad;
        auto g = quad_geometry(mesh.vertices[quad[0]], mesh.vertices[quad[1]],
                               mesh.vertices[quad[2]], mesh.vertices[quad[3]]);
        if (!(g.area > 0.0) || g.area_vector.norm() <= 0.0)
          throw std::runtime_error("cell " + std::to_string(c) +
                                   " has a degenerate face");
        f.area = g.area;
        f.normal = g.area_vector.normalized();
        f.left = c;
        int id = mesh.face_count();
        mesh.faces.push_back(f);
        face_index.emplace(key, id);
        mesh.cell_faces[c].emplace_back(id, +1);
      } else {
        MeshFace& f = mesh.faces[it->second];
        if (f.right != -1)
          throw std::runtime_error("face shared by more than two cells near cell " +
                                   std::to_string(c));
        f.right = c;
        mesh.cell_faces[c].emplace_back(it->second, -1);
      }
    }

    Vector3d centroid = Vector3d::Zero();
    for (int v : cv) centroid += mesh.vertices[v];
    mesh.centroids[c] = centroid / 8.0;

    // divergence-theorem volume over the outward-oriented triangulation
    double vol = 0.0;
    for (const auto& lf : kHexFaces) {
      const Vector3d& p0 = mesh.vertices[cv[lf[0]]];
      const Vector3d& p1 = mesh.vertices[cv[lf[1]]];
      const Vector3d& p2 = mesh.vertices[cv[lf[2]]];
      const Vector3d& p3 = mesh.vertices[cv[lf[3]]];
      Vector3d t1 = 0.5 * (p1 - p0).cross(p2 - p0);
      Vector3d t2 = 0.5 * (p2 - p0).cross(p3 - p0);
      vol += (p0 + p1 + p2).dot(t1) / 9.0;
      vol += (p0 + p2 + p3).dot(t2) / 9.0;
    }
    if (!(vol > 0.0))
      throw std::runtime_error("cell " + std::to_string(c) +
                               " has nonpositive volume (inverted ordering?)");
    mesh.volumes[c] = vol;
  }

  // closed-surface identity per cell
  for (int c = 0; c < nc; ++c) {
    Vector3d sum = Vector3d::Zero();
    double total_area = 0.0;
    for (auto [fid, sign] : mesh.cell_faces[c]) {
      const MeshFace& f = mesh.faces[fid];
      sum += sign * f.area * f.normal;
      total_area += f.area;
    }
    if (sum.norm() > 1e-10 * total_area)
      throw std::runtime_error("cell " + std::to_string(c) +
                               " fails the closed-surface identity");
  }

  // attach boundary groups
  std::map<std::string, int> group_of;
  for (const auto& b : boundary) {
    auto it = face_index.find(sorted_key(b.vertices));
    if (it == face_index.end())
      throw std::runtime_error("boundary quad does not match any cell face");
    MeshFace& f = mesh.faces[it->second];
    if (f.right != -1)
      throw std::runtime_error("boundary quad matches an interior face");
    if (f.group != -1)
      throw std::runtime_error("boundary face tagged twice");
    auto g = group_of.find(b.group);
    int gi;
    if (g == group_of.end()) {
      gi = static_cast<int>(mesh.group_names.size());
      group_of.emplace(b.group, gi);
      mesh.group_names.push_back(b.group);
      mesh.group_faces.emplace_back();
    } else {
      gi = g->second;
    }
    f.group = gi;
    mesh.group_faces[gi].push_back(it->second);
  }
  for (const MeshFace& f : mesh.faces)
    if (f.right == -1 && f.group == -1)
      throw std::runtime_error("boundary face without a boundary tag");

  return mesh;
}

UnstructuredMesh read_starcd(const std::filesystem::path& dir) {
  auto vrt_path = find_single(dir, ".vrt");
  auto cel_path = find_single(dir, ".cel");
  auto bnd_path = find_single(dir, ".bnd");

  std::map<long, int> vertex_of;
  std::vector<Vector3d> vertices;
  {
    std::ifstream in(vrt_path);
    if (!in) throw std::runtime_error("cannot open " + vrt_path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ss(line);
      long id;
      double x, y, z;
      if (!(ss >> id)) continue;  // blank line
      if (!(ss >> x >> y >> z)) fail(vrt_path, lineno, "malformed vertex line");
      if (vertex_of.count(id)) fail(vrt_path, lineno, "duplicate vertex id");
      vertex_of[id] = static_cast<int>(vertices.size());
      vertices.emplace_back(x, y, z);
    }
  }

  auto lookup = [&](long id, const std::filesystem::path& p, int lineno) {
    auto it = vertex_of.find(id);
    if (it == vertex_of.end())
      fail(p, lineno, "reference to missing vertex " + std::to_string(id));
    return it->second;
  };

  std::vector<std::array<int, 8>> cells;
  {
    std::ifstream in(cel_path);
    if (!in) throw std::runtime_error("cannot open " + cel_path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ss(line);
      long id;
      if (!(ss >> id)) continue;
      std::array<int, 8> cv;
      for (int i = 0; i < 8; ++i) {
        long v;
        if (!(ss >> v))
          fail(cel_path, lineno, "cell is not an 8-vertex hexahedron");
        cv[i] = lookup(v, cel_path, lineno);
      }
      cells.push_back(cv);
    }
  }

  std::vector<BoundaryQuad> boundary;
  {
    std::ifstream in(bnd_path);
    if (!in) throw std::runtime_error("cannot open " + bnd_path.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream ss(line);
      long id;
      if (!(ss >> id)) continue;
      BoundaryQuad b;
      for (int i = 0; i < 4; ++i) {
        long v;
        if (!(ss >> v)) fail(bnd_path, lineno, "malformed boundary line");
        b.vertices[i] = lookup(v, bnd_path, lineno);
      }
      std::string group;
      if (!(ss >> group)) fail(bnd_path, lineno, "boundary line lacks a group");
      b.group = group;
      boundary.push_back(std::move(b));
    }
  }

  return build_mesh(std::move(vertices), std::move(cells), boundary);
}

std::uint64_t starcd_checksum(const std::filesystem::path& dir) {
  std::uint64_t h = 1469598103934665603ull;
  auto absorb = [&h](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    char buf[4096];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
      for (std::streamsize i = 0; i < in.gcount(); ++i) {
        h ^= static_cast<unsigned char>(buf[i]);
        h *= 1099511628211ull;
      }
    }
  };
  absorb(find_single(dir, ".vrt"));
  absorb(find_single(dir, ".cel"));
  absorb(find_single(dir, ".bnd"));
  return h;
}

namespace {

constexpr char kCacheMagic[8] = {'T', 'T', 'D', 'V', 'M', 'S', 'H', '1'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <typename T>
bool get(std::istream& in, T& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof v));
}

}  // namespace

void write_mesh_cache(const UnstructuredMesh& mesh,
                      const std::filesystem::path& file,
                      std::uint64_t checksum) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out.write(kCacheMagic, sizeof kCacheMagic);
  put(out, kCacheVersion);
  put(out, checksum);

  put(out, static_cast<std::uint64_t>(mesh.vertices.size()));
  for (const auto& v : mesh.vertices)
    for (int i = 0; i < 3; ++i) put(out, v(i));
  put(out, static_cast<std::uint64_t>(mesh.cells.size()));
  for (const auto& c : mesh.cells)
    for (int v : c) put(out, static_cast<std::int32_t>(v));
  put(out, static_cast<std::uint64_t>(mesh.faces.size()));
  for (const auto& f : mesh.faces) {
    for (int v : f.vertices) put(out, static_cast<std::int32_t>(v));
    put(out, f.area);
    for (int i = 0; i < 3; ++i) put(out, f.normal(i));
    put(out, static_cast<std::int32_t>(f.left));
    put(out, static_cast<std::int32_t>(f.right));
    put(out, static_cast<std::int32_t>(f.group));
  }
  for (double v : mesh.volumes) put(out, v);
  for (const auto& c : mesh.centroids)
    for (int i = 0; i < 3; ++i) put(out, c(i));
  for (const auto& cf : mesh.cell_faces) {
    put(out, static_cast<std::uint32_t>(cf.size()));
    for (auto [fid, sign] : cf) {
      put(out, static_cast<std::int32_t>(fid));
      put(out, static_cast<std::int8_t>(sign));
    }
  }
  put(out, static_cast<std::uint64_t>(mesh.group_names.size()));
  for (std::size_t g = 0; g < mesh.group_names.size(); ++g) {
    const std::string& name = mesh.group_names[g];
    put(out, static_cast<std::uint32_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put(out, static_cast<std::uint64_t>(mesh.group_faces[g].size()));
    for (int fid : mesh.group_faces[g]) put(out, static_cast<std::int32_t>(fid));
  }
}

std::optional<UnstructuredMesh> load_mesh_cache(
    const std::filesystem::path& file, std::uint64_t checksum) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  if (!in.read(magic, sizeof magic) ||
      std::memcmp(magic, kCacheMagic, sizeof magic) != 0)
    return std::nullopt;
  std::uint32_t version;
  std::uint64_t stored;
  if (!get(in, version) || version != kCacheVersion) return std::nullopt;
  if (!get(in, stored) || stored != checksum) return std::nullopt;

  UnstructuredMesh mesh;
  std::uint64_t n;
  if (!get(in, n)) return std::nullopt;
  mesh.vertices.resize(n);
  for (auto& v : mesh.vertices)
    for (int i = 0; i < 3; ++i)
      if (!get(in, v(i))) return std::nullopt;
  if (!get(in, n)) return std::nullopt;
  mesh.cells.resize(n);
  for (auto& c : mesh.cells)
    for (int& v : c) {
      std::int32_t x;
      if (!get(in, x)) return std::nullopt;
      v = x;
    }
  if (!get(in, n)) return std::nullopt;
  mesh.faces.resize(n);
  for (auto& f : mesh.faces) {
    for (int& v : f.vertices) {
      std::int32_t x;
      if (!get(in, x)) return std::nullopt;
      v = x;
    }
    if (!get(in, f.area)) return std::nullopt;
    for (int i = 0; i < 3; ++i)
      if (!get(in, f.normal(i))) return std::nullopt;
    std::int32_t left, right, group;
    if (!get(in, left) || !get(in, right) || !get(in, group))
      return std::nullopt;
    f.left = left;
    f.right = right;
    f.group = group;
  }
  mesh.volumes.resize(mesh.cells.size());
  for (double& v : mesh.volumes)
    if (!get(in, v)) return std::nullopt;
  mesh.centroids.resize(mesh.cells.size());
  for (auto& c : mesh.centroids)
    for (int i = 0; i < 3; ++i)
      if (!get(in, c(i))) return std::nullopt;
  mesh.cell_faces.resize(mesh.cells.size());
  for (auto& cf : mesh.cell_faces) {
    std::uint32_t count;
    if (!get(in, count)) return std::nullopt;
    cf.resize(count);
    for (auto& [fid, sign] : cf) {
      std::int32_t f;
      std::int8_t s;
      if (!get(in, f) || !get(in, s)) return std::nullopt;
      fid = f;
      sign = s;
    }
  }
  if (!get(in, n)) return std::nullopt;
  mesh.group_names.resize(n);
  mesh.group_faces.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    std::uint32_t len;
    if (!get(in, len)) return std::nullopt;
    mesh.group_names[g].resize(len);
    if (!in.read(mesh.group_names[g].data(), len)) return std::nullopt;
    std::uint64_t cnt;
    if (!get(in, cnt)) return std::nullopt;
    mesh.group_faces[g].resize(cnt);
    for (int& fid : mesh.group_faces[g]) {
      std::int32_t x;
      if (!get(in, x)) return std::nullopt;
      fid = x;
    }
  }
  return mesh;
}

}  // namespace ttdvm
