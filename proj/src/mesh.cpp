#include "poro/mesh.hpp"

#include "poro/hex.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace poro {

std::string to_string(DomainTag tag) {
  switch (tag) {
    case DomainTag::solid: return "solid";
    case DomainTag::fluid: return "fluid";
    case DomainTag::macro: return "macro";
  }
  return "macro";
}

DomainTag domain_tag_from_string(const std::string& s) {
  if (s == "solid") return DomainTag::solid;
  if (s == "fluid") return DomainTag::fluid;
  if (s == "macro") return DomainTag::macro;
  throw ArgumentError("unknown domain tag: " + s);
}

int Mesh::add_tag(const std::string& name) {
  auto it = tag_ids_.find(name);
  if (it != tag_ids_.end()) return it->second;
  const int id = static_cast<int>(tag_names_.size());
  tag_names_.push_back(name);
  tag_ids_.emplace(name, id);
  return id;
}

int Mesh::tag_id(const std::string& name) const {
  auto it = tag_ids_.find(name);
  if (it == tag_ids_.end()) throw ArgumentError("unknown boundary tag: " + name);
  return it->second;
}

const std::string& Mesh::tag_name(int id) const {
  if (id < 0 || id >= static_cast<int>(tag_names_.size()))
    throw ArgumentError("boundary tag id out of range: " + std::to_string(id));
  return tag_names_[id];
}

bool Mesh::has_tag(const std::string& name) const {
  return tag_ids_.count(name) > 0;
}

std::array<int, 4> Mesh::face_nodes(const BoundaryFace& f) const {
  const auto& cell = cells.at(f.cell);
  const auto& lf = kHexFaces.at(f.local_face);
  return {cell[lf[0]], cell[lf[1]], cell[lf[2]], cell[lf[3]]};
}

std::array<Vec3, 8> Mesh::cell_coords(int cell) const {
  std::array<Vec3, 8> x;
  for (int a = 0; a < 8; ++a) x[a] = nodes[cells[cell][a]];
  return x;
}

double Mesh::volume() const {
  const double g = 1.0 / std::sqrt(3.0);
  double vol = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto x = cell_coords(static_cast<int>(c));
    for (int qa = 0; qa < 2; ++qa)
      for (int qb = 0; qb < 2; ++qb)
        for (int qc = 0; qc < 2; ++qc) {
          const Vec3 xi((qa ? g : -g), (qb ? g : -g), (qc ? g : -g));
          vol += hex_jacobian(x, xi).determinant();
        }
  }
  return vol;
}

void Mesh::bounding_box(Vec3& lo, Vec3& hi) const {
  if (nodes.empty()) throw GeometryError("bounding box of an empty mesh");
  lo = hi = nodes[0];
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
}

namespace {

// Sorted-node key identifying a quad face regardless of orientation.
std::array<int, 4> face_key(std::array<int, 4> f) {
  std::sort(f.begin(), f.end());
  return f;
}

}  // namespace

void Mesh::validate() const {
  const int n_nodes = static_cast<int>(nodes.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int a = 0; a < 8; ++a) {
      const int v = cells[c][a];
      if (v < 0 || v >= n_nodes)
        throw GeometryError("cell " + std::to_string(c) + " references node " +
                            std::to_string(v) + " out of range");
    }
    const auto x = cell_coords(static_cast<int>(c));
    for (const auto& corner : kHexCorners) {
      const Vec3 xi(corner[0], corner[1], corner[2]);
      if (!(hex_jacobian(x, xi).determinant() > 0.0))
        throw GeometryError("degenerate or inverted cell " + std::to_string(c));
    }
  }
  // The tagged faces must be exactly the free faces of the complex.
  std::map<std::array<int, 4>, int> face_count;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int lf = 0; lf < 6; ++lf)
      face_count[face_key(face_nodes({static_cast<int>(c), lf, 0}))]++;
  std::map<std::array<int, 4>, int> tagged;
  for (const auto& bf : boundary_faces) {
    if (bf.cell < 0 || bf.cell >= static_cast<int>(cells.size()) ||
        bf.local_face < 0 || bf.local_face >= 6)
      throw GeometryError("boundary face references invalid cell/local face");
    tagged[face_key(face_nodes(bf))]++;
  }
  for (const auto& [key, count] : face_count) {
    if (count > 2) throw GeometryError("face shared by more than two cells");
    if (count == 1) {
      auto it = tagged.find(key);
      if (it == tagged.end())
        throw GeometryError("boundary face of the complex carries no tag");
      if (it->second != 1)
        throw GeometryError("boundary face carries more than one tag");
    }
  }
  if (tagged.size() != boundary_faces.size())
    throw GeometryError("duplicate boundary face entries");
  for (const auto& [key, n] : tagged) {
    auto it = face_count.find(key);
    if (it == face_count.end() || it->second != 1)
      throw GeometryError("tagged face is not a boundary face of the complex");
  }
}

std::string Mesh::content_hash() const {
  std::ostringstream ss;
  ss << to_string(domain_tag) << '\n';
  for (const auto& p : nodes)
    ss << format_full(p[0]) << ' ' << format_full(p[1]) << ' ' << format_full(p[2]) << '\n';
  for (const auto& c : cells) {
    for (int v : c) ss << v << ' ';
    ss << '\n';
  }
  for (const auto& f : boundary_faces)
    ss << f.cell << ' ' << f.local_face << ' ' << tag_name(f.tag) << '\n';
  return fnv1a_hex(ss.str());
}

// ---------------------------------------------------------------------------
// Voxel partitioning

namespace {

constexpr const char* kSideNames[6] = {"xmin", "xmax", "ymin", "ymax", "zmin", "zmax"};

struct VoxelGrid {
  int n;
  std::vector<char> inside;  // n^3, x fastest

  int idx(int i, int j, int k) const { return (k * n + j) * n + i; }
  bool is_inside(int i, int j, int k) const { return inside[idx(i, j, k)] != 0; }
};

// Builds one phase mesh over the selected voxels. lattice_id maps the
// (n+1)^3 lattice to this mesh's node numbering (-1 where unused).
Mesh build_phase_mesh(const VoxelGrid& grid, bool phase, DomainTag tag,
                      std::vector<int>& lattice_id) {
  const int n = grid.n;
  const int m = n + 1;
  const double h = 1.0 / n;
  auto lid = [m](int i, int j, int k) { return (k * m + j) * m + i; };

  Mesh mesh;
  mesh.domain_tag = tag;
  lattice_id.assign(m * m * m, -1);

  auto node_of = [&](int i, int j, int k) {
    int& id = lattice_id[lid(i, j, k)];
    if (id < 0) {
      id = static_cast<int>(mesh.nodes.size());
      mesh.nodes.emplace_back(i * h, j * h, k * h);
    }
    return id;
  };

  int side_tags[6];
  for (int s = 0; s < 6; ++s) side_tags[s] = mesh.add_tag(kSideNames[s]);
  const int interface_tag = mesh.add_tag("interface");

  // Neighbor offsets per local face (kHexFaces order -x +x -y +y -z +z).
  const int off[6][3] = {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (grid.is_inside(i, j, k) != phase) continue;
        const int cell_id = static_cast<int>(mesh.cells.size());
        mesh.cells.push_back({node_of(i, j, k), node_of(i + 1, j, k),
                              node_of(i + 1, j + 1, k), node_of(i, j + 1, k),
                              node_of(i, j, k + 1), node_of(i + 1, j, k + 1),
                              node_of(i + 1, j + 1, k + 1), node_of(i, j + 1, k + 1)});
        for (int f = 0; f < 6; ++f) {
          const int ni = i + off[f][0], nj = j + off[f][1], nk = k + off[f][2];
          if (ni < 0 || ni >= n || nj < 0 || nj >= n || nk < 0 || nk >= n) {
            mesh.boundary_faces.push_back({cell_id, f, side_tags[f]});
          } else if (grid.is_inside(ni, nj, nk) != phase) {
            mesh.boundary_faces.push_back({cell_id, f, interface_tag});
          }
        }
      }
  return mesh;
}

}  // namespace

VoxelPartition voxelize_unit_cube(int n, const std::function<bool(const Vec3&)>& inside) {
  if (n < 1) throw ArgumentError("voxel resolution must be positive");
  VoxelGrid grid{n, std::vector<char>(static_cast<std::size_t>(n) * n * n, 0)};
  const double h = 1.0 / n;
  long count = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec3 center((i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h);
        const bool in = inside(center);
        grid.inside[grid.idx(i, j, k)] = in ? 1 : 0;
        count += in ? 1 : 0;
      }

  VoxelPartition part;
  part.inside_fraction = static_cast<double>(count) / (static_cast<double>(n) * n * n);
  std::vector<int> lat_in, lat_out;
  part.inside = build_phase_mesh(grid, true, DomainTag::fluid, lat_in);
  part.outside = build_phase_mesh(grid, false, DomainTag::solid, lat_out);
  for (std::size_t l = 0; l < lat_in.size(); ++l)
    if (lat_in[l] >= 0 && lat_out[l] >= 0)
      part.interface_nodes.emplace_back(lat_in[l], lat_out[l]);
  return part;
}

double three_cylinder_volume_fraction(double r) {
  // Union of three orthogonal cylinders of radius r through the cube center:
  // 3 pi r^2 - 3 * (16/3) r^3 + 8 (2 - sqrt(2)) r^3 (Steinmetz solids),
  // valid while the pairwise intersections stay inside the cube (r <= 0.5).
  return 3.0 * M_PI * r * r - 16.0 * r * r * r + 8.0 * (2.0 - std::sqrt(2.0)) * r * r * r;
}

namespace {

// Fluid percolation along an axis: some connected component contains voxels
// on both extreme layers at the same transverse position.
bool percolates(const VoxelGrid& grid, int axis) {
  const int n = grid.n;
  std::vector<int> comp(grid.inside.size(), -1);
  int n_comp = 0;
  for (int start = 0; start < static_cast<int>(grid.inside.size()); ++start) {
    if (!grid.inside[start] || comp[start] >= 0) continue;
    std::deque<int> queue{start};
    comp[start] = n_comp;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      const int i = v % n, j = (v / n) % n, k = v / (n * n);
      const int d[6][3] = {{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}};
      for (const auto& o : d) {
        const int ni = i + o[0], nj = j + o[1], nk = k + o[2];
        if (ni < 0 || ni >= n || nj < 0 || nj >= n || nk < 0 || nk >= n) continue;
        const int w = grid.idx(ni, nj, nk);
        if (grid.inside[w] && comp[w] < 0) {
          comp[w] = n_comp;
          queue.push_back(w);
        }
      }
    }
    ++n_comp;
  }
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      int lo[3], hi[3];
      lo[axis] = 0;
      hi[axis] = n - 1;
      lo[(axis + 1) % 3] = hi[(axis + 1) % 3] = b;
      lo[(axis + 2) % 3] = hi[(axis + 2) % 3] = c;
      const int vlo = grid.idx(lo[0], lo[1], lo[2]);
      const int vhi = grid.idx(hi[0], hi[1], hi[2]);
      if (grid.inside[vlo] && grid.inside[vhi] && comp[vlo] == comp[vhi]) return true;
    }
  return false;
}

}  // namespace

RveGeometry generate_voxel_rve(int resolution, double channel_radius) {
  if (resolution < 8) throw ArgumentError("RVE resolution must be at least 8");
  if (!(channel_radius > 0.0 && channel_radius < 0.5))
    throw ArgumentError("channel radius must lie in (0, 0.5)");

  auto in_channels = [channel_radius](const Vec3& p) {
    const double r2 = channel_radius * channel_radius;
    for (int axis = 0; axis < 3; ++axis) {
      const double a = p[(axis + 1) % 3] - 0.5;
      const double b = p[(axis + 2) % 3] - 0.5;
      if (a * a + b * b <= r2) return true;
    }
    return false;
  };

  const int n = resolution;
  VoxelGrid grid{n, std::vector<char>(static_cast<std::size_t>(n) * n * n, 0)};
  const double h = 1.0 / n;
  long count = 0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const bool in = in_channels(Vec3((i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h));
        grid.inside[grid.idx(i, j, k)] = in ? 1 : 0;
        count += in ? 1 : 0;
      }
  if (count == 0)
    throw GeometryError("channel radius " + std::to_string(channel_radius) +
                        " leaves no fluid voxels at resolution " + std::to_string(n));
  if (count == static_cast<long>(n) * n * n)
    throw GeometryError("channels swallow the whole cube; no solid voxels left");
  for (int axis = 0; axis < 3; ++axis)
    if (!percolates(grid, axis))
      throw GeometryError("fluid phase does not percolate along axis " +
                          std::to_string(axis + 1));

  VoxelPartition part;
  part.inside_fraction = static_cast<double>(count) / (static_cast<double>(n) * n * n);
  std::vector<int> lat_in, lat_out;
  part.inside = build_phase_mesh(grid, true, DomainTag::fluid, lat_in);
  part.outside = build_phase_mesh(grid, false, DomainTag::solid, lat_out);

  RveGeometry rve;
  rve.fluid = std::move(part.inside);
  rve.solid = std::move(part.outside);
  rve.porosity = part.inside_fraction;
  rve.resolution = n;
  rve.channel_radius = channel_radius;
  for (std::size_t l = 0; l < lat_in.size(); ++l)
    if (lat_in[l] >= 0 && lat_out[l] >= 0)
      rve.interface_nodes.emplace_back(lat_out[l], lat_in[l]);
  return rve;
}

Mesh generate_column_mesh(double height, double breadth, std::array<int, 3> divisions) {
  if (!(height > 0.0) || !(breadth > 0.0))
    throw ArgumentError("column dimensions must be positive");
  for (int d : divisions)
    if (d < 1) throw ArgumentError("divisions must be at least 1 per axis");

  const int nx = divisions[0], ny = divisions[1], nz = divisions[2];
  Mesh mesh;
  mesh.domain_tag = DomainTag::macro;
  const int top = mesh.add_tag("top");
  const int bottom = mesh.add_tag("bottom");
  const int sides = mesh.add_tag("sides");

  auto nid = [&](int i, int j, int k) { return (k * (ny + 1) + j) * (nx + 1) + i; };
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        mesh.nodes.emplace_back(breadth * i / nx, height * j / ny, breadth * k / nz);

  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int cell_id = static_cast<int>(mesh.cells.size());
        mesh.cells.push_back({nid(i, j, k), nid(i + 1, j, k), nid(i + 1, j + 1, k),
                              nid(i, j + 1, k), nid(i, j, k + 1), nid(i + 1, j, k + 1),
                              nid(i + 1, j + 1, k + 1), nid(i, j + 1, k + 1)});
        if (i == 0) mesh.boundary_faces.push_back({cell_id, 0, sides});
        if (i == nx - 1) mesh.boundary_faces.push_back({cell_id, 1, sides});
        if (j == 0) mesh.boundary_faces.push_back({cell_id, 2, bottom});
        if (j == ny - 1) mesh.boundary_faces.push_back({cell_id, 3, top});
        if (k == 0) mesh.boundary_faces.push_back({cell_id, 4, sides});
        if (k == nz - 1) mesh.boundary_faces.push_back({cell_id, 5, sides});
      }
  return mesh;
}

PeriodicMap periodic_pairs(const Mesh& mesh, const std::vector<int>& axes, double tol) {
  Vec3 lo, hi;
  mesh.bounding_box(lo, hi);
  PeriodicMap map;
  map.axes = axes;

  for (int axis : axes) {
    if (axis < 0 || axis > 2) throw ArgumentError("periodic axis must be 0, 1 or 2");
    const double span = hi[axis] - lo[axis];
    if (!(span > 0.0)) throw PairingError("mesh is flat along the requested axis");
    const double geom_tol = tol * span;
    const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;

    // Quantized transverse key -> node, per side.
    auto key_of = [&](const Vec3& p) {
      const double s1 = std::max(hi[a1] - lo[a1], 1.0);
      const double s2 = std::max(hi[a2] - lo[a2], 1.0);
      const long q1 = std::lround((p[a1] - lo[a1]) / (tol * s1) / 16.0);
      const long q2 = std::lround((p[a2] - lo[a2]) / (tol * s2) / 16.0);
      return std::make_pair(q1, q2);
    };
    std::map<std::pair<long, long>, int> low_side;
    for (int v = 0; v < static_cast<int>(mesh.nodes.size()); ++v)
      if (std::abs(mesh.nodes[v][axis] - lo[axis]) <= geom_tol)
        if (!low_side.emplace(key_of(mesh.nodes[v]), v).second)
          throw PairingError("coincident nodes on the low periodic face near node " +
                             std::to_string(v));
    std::size_t matched = 0;
    for (int v = 0; v < static_cast<int>(mesh.nodes.size()); ++v) {
      if (std::abs(mesh.nodes[v][axis] - hi[axis]) > geom_tol) continue;
      auto it = low_side.find(key_of(mesh.nodes[v]));
      if (it == low_side.end())
        throw PairingError("unmatched node " + std::to_string(v) +
                           " on the high periodic face of axis " + std::to_string(axis + 1));
      const Vec3 d = mesh.nodes[v] - mesh.nodes[it->second];
      if (std::abs(d[a1]) > geom_tol || std::abs(d[a2]) > geom_tol ||
          std::abs(d[axis] - span) > geom_tol)
        throw PairingError("periodic mismatch at node " + std::to_string(v));
      map.pairs.push_back({it->second, v, axis});
      ++matched;
    }
    if (matched != low_side.size())
      throw PairingError("periodic faces of axis " + std::to_string(axis + 1) +
                         " have different node counts");
  }
  return map;
}

std::string mesh_stats_table(const Mesh& mesh) {
  std::ostringstream os;
  os << "quantity,value\n";
  os << "domain," << to_string(mesh.domain_tag) << '\n';
  os << "nodes," << mesh.nodes.size() << '\n';
  os << "cells," << mesh.cells.size() << '\n';
  os << "boundary_faces," << mesh.boundary_faces.size() << '\n';
  os << "volume," << format_full(mesh.volume()) << '\n';
  Vec3 lo, hi;
  mesh.bounding_box(lo, hi);
  for (int d = 0; d < 3; ++d) {
    os << "bbox_min_" << d + 1 << ',' << format_full(lo[d]) << '\n';
    os << "bbox_max_" << d + 1 << ',' << format_full(hi[d]) << '\n';
  }
  std::map<int, int> per_tag;
  for (const auto& f : mesh.boundary_faces) per_tag[f.tag]++;
  for (const auto& [tag, count] : per_tag)
    os << "faces_" << mesh.tag_name(tag) << ',' << count << '\n';
  return os.str();
}

}  // namespace poro
