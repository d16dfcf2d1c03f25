// SPDX-License-Identifier: MIT
#include "wrom/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wrom {

namespace {

constexpr int kLocalEdges[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                   {1, 2}, {1, 3}, {2, 3}};

}  // namespace

Mesh build_cube_mesh(int n) {
  if (n < 1) throw std::invalid_argument("build_cube_mesh: n must be >= 1");
  Mesh mesh;
  mesh.n = n;

  const int m = n + 1;
  auto vid = [m](int i, int j, int k) { return (k * m + j) * m + i; };

  mesh.vertices.resize(static_cast<std::size_t>(m) * m * m);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        mesh.vertices[vid(i, j, k)] = {-1.0 + 2.0 * i / n, -1.0 + 2.0 * j / n,
                                       -1.0 + 2.0 * k / n};

  // Six Kuhn tets per cube, all sharing the main diagonal v0-v7; this exact
  // pattern is translation invariant, so face diagonals agree between
  // neighbouring cubes and the mesh is conforming.
  mesh.tets.reserve(static_cast<std::size_t>(6) * n * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int v0 = vid(i, j, k), v1 = vid(i + 1, j, k);
        const int v2 = vid(i, j + 1, k), v3 = vid(i + 1, j + 1, k);
        const int v4 = vid(i, j, k + 1), v5 = vid(i + 1, j, k + 1);
        const int v6 = vid(i, j + 1, k + 1), v7 = vid(i + 1, j + 1, k + 1);
        mesh.tets.push_back({v0, v1, v3, v7});
        mesh.tets.push_back({v0, v1, v7, v5});
        mesh.tets.push_back({v0, v5, v7, v4});
        mesh.tets.push_back({v0, v3, v2, v7});
        mesh.tets.push_back({v0, v6, v4, v7});
        mesh.tets.push_back({v0, v2, v6, v7});
      }

  // Global edges: sorted vertex pairs, numbered in lexicographic order.
  std::map<std::array<int, 2>, int> edge_index;
  for (const auto& tet : mesh.tets)
    for (const auto& le : kLocalEdges) {
      int a = tet[le[0]], b = tet[le[1]];
      if (a > b) std::swap(a, b);
      edge_index.emplace(std::array<int, 2>{a, b}, 0);
    }
  mesh.edges.reserve(edge_index.size());
  for (auto& [key, idx] : edge_index) {
    idx = static_cast<int>(mesh.edges.size());
    mesh.edges.push_back(key);
  }

  mesh.tet_edges.resize(mesh.tets.size());
  mesh.tet_edge_signs.resize(mesh.tets.size());
  for (std::size_t t = 0; t < mesh.tets.size(); ++t)
    for (int e = 0; e < 6; ++e) {
      int a = mesh.tets[t][kLocalEdges[e][0]];
      int b = mesh.tets[t][kLocalEdges[e][1]];
      const int sign = a < b ? 1 : -1;
      if (a > b) std::swap(a, b);
      mesh.tet_edges[t][e] = edge_index.at({a, b});
      mesh.tet_edge_signs[t][e] = sign;
    }

  // Boundary faces: tet faces whose vertices all share one coordinate at +-1.
  // On a structured cube mesh this classification is exact.
  auto face_of = [&mesh](int a, int b, int c) -> int {
    for (int axis = 0; axis < 3; ++axis)
      for (double side : {-1.0, 1.0}) {
        if (mesh.vertices[a][axis] == side && mesh.vertices[b][axis] == side &&
            mesh.vertices[c][axis] == side)
          return 2 * axis + (side > 0 ? 1 : 0);
      }
    return -1;
  };
  for (const auto& tet : mesh.tets)
    for (int skip = 0; skip < 4; ++skip) {
      std::array<int, 3> f;
      int p = 0;
      for (int v = 0; v < 4; ++v)
        if (v != skip) f[p++] = tet[v];
      std::sort(f.begin(), f.end());
      const int id = face_of(f[0], f[1], f[2]);
      if (id < 0) continue;
      Eigen::Vector3d normal = Eigen::Vector3d::Zero();
      normal[id / 2] = (id % 2 == 0) ? -1.0 : 1.0;
      mesh.boundary_faces.push_back({f, normal, id});
    }
  std::sort(mesh.boundary_faces.begin(), mesh.boundary_faces.end(),
            [](const BoundaryFace& x, const BoundaryFace& y) {
              return x.v < y.v;
            });
  // Interior tet faces appear twice and never classify as boundary, so no
  // duplicates are possible here; keep the cheap guard anyway.
  mesh.boundary_faces.erase(
      std::unique(mesh.boundary_faces.begin(), mesh.boundary_faces.end(),
                  [](const BoundaryFace& x, const BoundaryFace& y) {
                    return x.v == y.v;
                  }),
      mesh.boundary_faces.end());

  return mesh;
}

double tet_volume(const Mesh& mesh, std::size_t t) {
  const auto& tet = mesh.tets[t];
  const Eigen::Vector3d e1 = mesh.vertices[tet[1]] - mesh.vertices[tet[0]];
  const Eigen::Vector3d e2 = mesh.vertices[tet[2]] - mesh.vertices[tet[0]];
  const Eigen::Vector3d e3 = mesh.vertices[tet[3]] - mesh.vertices[tet[0]];
  return e1.cross(e2).dot(e3) / 6.0;
}

}  // namespace wrom
