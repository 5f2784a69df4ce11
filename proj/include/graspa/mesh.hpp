#pragma once

#include <array>
#include <string>
#include <vector>

#include "graspa/geometry.hpp"

namespace graspa {

/// Triangle mesh with the derived quantities the scoring pipeline needs:
/// uniform-density center of mass and the maximum surface distance from it
/// (used to scale contact torques). Watertightness is not required; when a
/// mesh is open the center of mass falls back to the vertex centroid and
/// `watertight` is false.
struct TriMesh {
  std::vector<Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  Vector3d center_of_mass = Vector3d::Zero();
  double max_surface_radius = 0.0;  // max distance center_of_mass -> vertex
  bool watertight = false;

  Vector3d triangle_normal(int tri) const {
    const auto& t = triangles[static_cast<size_t>(tri)];
    Vector3d n = (vertices[static_cast<size_t>(t[1])] - vertices[static_cast<size_t>(t[0])])
                     .cross(vertices[static_cast<size_t>(t[2])] - vertices[static_cast<size_t>(t[0])]);
    return n.normalized();
  }

  double triangle_area(int tri) const {
    const auto& t = triangles[static_cast<size_t>(tri)];
    return 0.5 * (vertices[static_cast<size_t>(t[1])] - vertices[static_cast<size_t>(t[0])])
                     .cross(vertices[static_cast<size_t>(t[2])] - vertices[static_cast<size_t>(t[0])])
                     .norm();
  }

  /// Rigidly transformed copy; derived quantities move with the mesh.
  TriMesh transformed(const Pose& pose) const;
};

/// Recomputes center of mass, max surface radius and the watertight flag,
/// and validates indices and triangle areas. Degenerate (zero-area)
/// triangles are dropped.
void finalize_mesh(TriMesh& mesh, const std::string& origin);

/// Loads an ASCII OFF or ASCII PLY triangle mesh; the format is chosen by
/// content, not extension.
TriMesh load_mesh(const std::string& path);

TriMesh parse_mesh(const std::string& content, const std::string& origin);

/// Axis-aligned unit-cube-style box helper used all over the test suite.
TriMesh make_box_mesh(const Vector3d& size, const Vector3d& center = Vector3d::Zero());

/// UV sphere approximation, `rings` >= 2 and `segments` >= 3.
TriMesh make_sphere_mesh(double radius, int rings, int segments,
                         const Vector3d& center = Vector3d::Zero());

}  // namespace graspa
