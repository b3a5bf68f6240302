#pragma once

#include "poro/core.hpp"

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace poro {

enum class DomainTag { solid, fluid, macro };

std::string to_string(DomainTag tag);
DomainTag domain_tag_from_string(const std::string& s);

/// A tagged boundary face, stored by owning cell and local face index so the
/// parent-cell shape functions are available for surface integrals.
struct BoundaryFace {
  int cell;
  int local_face;  // 0..5 into kHexFaces
  int tag;
};

class Mesh {
 public:
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 8>> cells;
  std::vector<BoundaryFace> boundary_faces;
  DomainTag domain_tag = DomainTag::macro;

  /// Registers (or looks up) a boundary tag name; ids are dense from 0.
  int add_tag(const std::string& name);
  int tag_id(const std::string& name) const;
  const std::string& tag_name(int id) const;
  const std::vector<std::string>& tag_names() const { return tag_names_; }
  bool has_tag(const std::string& name) const;

  std::array<int, 4> face_nodes(const BoundaryFace& f) const;
  std::array<Vec3, 8> cell_coords(int cell) const;

  /// Total volume by 2x2x2 Gauss quadrature of the isoparametric Jacobian.
  double volume() const;

  void bounding_box(Vec3& lo, Vec3& hi) const;

  /// Checks the structural invariants: index ranges, strictly positive
  /// corner Jacobians, and that the tagged faces are exactly the boundary
  /// faces of the cell complex (each tagged once). Throws GeometryError.
  void validate() const;

  /// Deterministic content hash (nodes, cells, faces, tags).
  std::string content_hash() const;

 private:
  std::vector<std::string> tag_names_;
  std::map<std::string, int> tag_ids_;
};

/// Node pairing across opposite periodic faces; master on the low side.
struct PeriodicMap {
  struct Pair {
    int master;
    int slave;
    int axis;  // 0,1,2
  };
  std::vector<Pair> pairs;
  std::vector<int> axes;
};

/// Output of the voxel partitioner: conforming hexahedral meshes of the two
/// phases, with geometrically coincident interface nodes linked by
/// interface_nodes (inside node id, outside node id).
struct VoxelPartition {
  Mesh inside;
  Mesh outside;
  double inside_fraction = 0.0;
  std::vector<std::pair<int, int>> interface_nodes;
};

/// Partition the n^3 voxel grid on the unit cube by voxel-center membership.
/// Exterior faces are tagged xmin..zmax, phase-to-phase faces "interface".
VoxelPartition voxelize_unit_cube(int n, const std::function<bool(const Vec3&)>& inside);

/// The three-orthogonal-channel RVE: fluid phase is the union of three
/// cylinders of the given radius along the axis-parallel center lines.
struct RveGeometry {
  Mesh solid;
  Mesh fluid;
  double porosity = 0.0;
  std::vector<std::pair<int, int>> interface_nodes;  // (solid node, fluid node)
  int resolution = 0;
  double channel_radius = 0.0;
};

RveGeometry generate_voxel_rve(int resolution, double channel_radius);

/// Analytic volume fraction of the union of the three cylinders (via
/// inclusion-exclusion with the Steinmetz intersection volumes).
double three_cylinder_volume_fraction(double radius);

/// Structured box mesh b x h x b, tags top (y=h), bottom (y=0), sides.
Mesh generate_column_mesh(double height, double breadth, std::array<int, 3> divisions);

/// Geometric periodic pairing across opposite boundary faces of the axis-
/// aligned bounding box, for the requested axes. Tolerance is relative to
/// the box extent. Throws PairingError naming the first unmatched node.
PeriodicMap periodic_pairs(const Mesh& mesh, const std::vector<int>& axes,
                           double tol = 1e-10);

/// name,value statistics table (delimiter-separated).
std::string mesh_stats_table(const Mesh& mesh);

// Gmsh v2.2 ASCII subset (see docs/mesh_format.md).
void write_gmsh(const Mesh& mesh, const std::string& path);
Mesh load_mesh(const std::string& path);

}  // namespace poro
