#pragma once

#include "poro/core.hpp"

#include <array>

namespace poro {

// Trilinear 8-node hexahedron on the reference cube [-1,1]^3.
// Local node order (Gmsh/VTK hexahedron): corner signs
//   0:(-,-,-) 1:(+,-,-) 2:(+,+,-) 3:(-,+,-) 4:(-,-,+) 5:(+,-,+) 6:(+,+,+) 7:(-,+,+)

inline constexpr std::array<std::array<double, 3>, 8> kHexCorners = {{
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1},
}};

// Local faces, nodes listed counterclockwise seen from outside the cell.
// 0:-x 1:+x 2:-y 3:+y 4:-z 5:+z
inline constexpr std::array<std::array<int, 4>, 6> kHexFaces = {{
    {0, 4, 7, 3}, {1, 2, 6, 5}, {0, 1, 5, 4}, {2, 3, 7, 6}, {0, 3, 2, 1}, {4, 5, 6, 7},
}};

inline std::array<double, 8> hex_shape(const Vec3& xi) {
  std::array<double, 8> N;
  for (int a = 0; a < 8; ++a) {
    const auto& c = kHexCorners[a];
    N[a] = 0.125 * (1 + c[0] * xi[0]) * (1 + c[1] * xi[1]) * (1 + c[2] * xi[2]);
  }
  return N;
}

/// Shape gradients with respect to the reference coordinates, one row per node.
inline std::array<Vec3, 8> hex_shape_grad(const Vec3& xi) {
  std::array<Vec3, 8> dN;
  for (int a = 0; a < 8; ++a) {
    const auto& c = kHexCorners[a];
    dN[a][0] = 0.125 * c[0] * (1 + c[1] * xi[1]) * (1 + c[2] * xi[2]);
    dN[a][1] = 0.125 * (1 + c[0] * xi[0]) * c[1] * (1 + c[2] * xi[2]);
    dN[a][2] = 0.125 * (1 + c[0] * xi[0]) * (1 + c[1] * xi[1]) * c[2];
  }
  return dN;
}

/// Jacobian dx/dxi of the isoparametric map for given corner coordinates.
inline Mat3 hex_jacobian(const std::array<Vec3, 8>& x, const Vec3& xi) {
  const auto dN = hex_shape_grad(xi);
  Mat3 J = Mat3::Zero();
  for (int a = 0; a < 8; ++a) J += x[a] * dN[a].transpose();
  return J;
}

/// Reference coordinates of a point on a face, from face-local coords (a,b)
/// in [-1,1]^2 (bilinear in the face corner reference coordinates).
inline Vec3 hex_face_point(int local_face, double a, double b) {
  const auto& f = kHexFaces[local_face];
  const double s[4] = {0.25 * (1 - a) * (1 - b), 0.25 * (1 + a) * (1 - b),
                       0.25 * (1 + a) * (1 + b), 0.25 * (1 - a) * (1 + b)};
  Vec3 xi = Vec3::Zero();
  for (int q = 0; q < 4; ++q)
    for (int d = 0; d < 3; ++d) xi[d] += s[q] * kHexCorners[f[q]][d];
  return xi;
}

/// Outward-oriented area vector d(x)/da x d(x)/db at face-local (a,b);
/// its norm is the area measure for the [-1,1]^2 parametrization.
inline Vec3 hex_face_area_vector(const std::array<Vec3, 8>& x, int local_face,
                                 double a, double b) {
  const auto& f = kHexFaces[local_face];
  const double dsa[4] = {-0.25 * (1 - b), 0.25 * (1 - b), 0.25 * (1 + b), -0.25 * (1 + b)};
  const double dsb[4] = {-0.25 * (1 - a), -0.25 * (1 + a), 0.25 * (1 + a), 0.25 * (1 - a)};
  Vec3 ta = Vec3::Zero(), tb = Vec3::Zero();
  for (int q = 0; q < 4; ++q) {
    ta += dsa[q] * x[f[q]];
    tb += dsb[q] * x[f[q]];
  }
  return ta.cross(tb);
}

}  // namespace poro
