// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <vector>

namespace wrom {

struct BoundaryFace {
  std::array<int, 3> v;      // vertex indices, ascending
  Eigen::Vector3d normal;    // outward unit normal of the cube face
  int face_id;               // 0:-x 1:+x 2:-y 3:+y 4:-z 5:+z
};

// Structured tetrahedral mesh of (-1,1)^3: n^3 cubes, each cut into the six
// Kuhn tets sharing the cube's main diagonal. Deterministic numbering
// throughout; edges carry the global low-index -> high-index orientation
// needed by edge elements.
struct Mesh {
  int n = 0;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 4>> tets;
  std::vector<BoundaryFace> boundary_faces;
  std::vector<std::array<int, 2>> edges;  // (low, high) vertex pairs, sorted

  // Local tet edges in the fixed order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3):
  // global edge index and +-1 sign of the local direction against the global
  // low -> high orientation.
  std::vector<std::array<int, 6>> tet_edges;
  std::vector<std::array<int, 6>> tet_edge_signs;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
};

// Throws std::invalid_argument for n == 0.
Mesh build_cube_mesh(int n);

// Signed volume of tet t (positive for all tets this builder produces).
double tet_volume(const Mesh& mesh, std::size_t t);

}  // namespace wrom
