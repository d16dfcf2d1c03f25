// SPDX-License-Identifier: MIT
#include "wrom/maxwell.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "wrom/quadrature.hpp"

namespace wrom {

namespace {

constexpr int kVolumeOrder = 2;
constexpr int kLocalEdges[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                   {1, 2}, {1, 3}, {2, 3}};

struct TetGeometry {
  Eigen::Vector3d p0;
  Eigen::Matrix3d edge;
  Eigen::Matrix<double, 3, 4> grads;
  double vol;
};

TetGeometry tet_geometry(const Mesh& mesh, const std::array<int, 4>& tet) {
  TetGeometry g;
  g.p0 = mesh.vertices[tet[0]];
  for (int c = 0; c < 3; ++c)
    g.edge.col(c) = mesh.vertices[tet[c + 1]] - g.p0;
  const Eigen::Matrix3d inv = g.edge.inverse();
  for (int i = 0; i < 3; ++i) g.grads.col(i + 1) = inv.row(i).transpose();
  g.grads.col(0) = -g.grads.col(1) - g.grads.col(2) - g.grads.col(3);
  g.vol = g.edge.determinant() / 6.0;
  return g;
}

inline Eigen::Vector4d shape_values(const Eigen::Vector3d& q) {
  return {1.0 - q[0] - q[1] - q[2], q[0], q[1], q[2]};
}

// dT v for dT = I + c E_31 adds c*v1 to the third component.
inline Eigen::Vector3d push_curl(const Eigen::Vector3d& v, double c) {
  return {v[0], v[1], v[2] + c * v[0]};
}

// dT^-T v for dT^-T = I - c E_13 subtracts c*v3 from the first component.
inline Eigen::Vector3d push_covariant(const Eigen::Vector3d& v, double c) {
  return {v[0] - c * v[2], v[1], v[2]};
}

Eigen::Vector3cd default_source(const Eigen::Vector3d& x) {
  return {Complex(0.0, 0.0), Complex(0.0, 0.0),
          Complex(std::exp(-x.squaredNorm()), 0.0)};
}

}  // namespace

ThetaScan theta_scan(Complex mu, Complex Lambda, int grid) {
  const Complex inv_mu = Complex(1.0, 0.0) / mu;
  ThetaScan best;
  best.bound = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid; ++k) {
    const double t = 2.0 * M_PI * k / grid;
    const Complex rot(std::cos(t), std::sin(t));
    const double mu_b = (rot * inv_mu).real();
    const double lambda_b = (-rot * Lambda).real();
    const double bound = std::min(mu_b, lambda_b);
    if (bound > best.bound) best = {t, mu_b, lambda_b, bound};
  }
  return best;
}

std::vector<bool> boundary_edge_mask(const Mesh& mesh) {
  std::vector<bool> mask(mesh.edge_count(), false);
  std::map<std::array<int, 2>, int> edge_index;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e)
    edge_index.emplace(mesh.edges[e], static_cast<int>(e));
  for (const auto& face : mesh.boundary_faces)
    for (const auto& [a, b] : {std::pair{face.v[0], face.v[1]},
                               std::pair{face.v[0], face.v[2]},
                               std::pair{face.v[1], face.v[2]}}) {
      mask[edge_index.at({a, b})] = true;
    }
  return mask;
}

namespace {

// Shared element loop: accumulates the complex-weighted system (A, b) or the
// two unit-coefficient grams, depending on which accumulators are non-null.
void element_loop(const Mesh& mesh, const MaxwellProblem& p,
                  const ParamPoint& y, TripletAccumulator* system,
                  VectorC* load, TripletAccumulator* curl_gram,
                  TripletAccumulator* mass_gram) {
  const Deformation def(y, p.spec);
  const auto rule = tet_quadrature(kVolumeOrder);
  const Complex inv_mu = Complex(1.0, 0.0) / p.mu;
  const Complex minus_iw(0.0, -p.omega);

  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto& tet = mesh.tets[t];
    const TetGeometry geo = tet_geometry(mesh, tet);
    const auto& edges = mesh.tet_edges[t];
    const auto& signs = mesh.tet_edge_signs[t];

    std::array<Eigen::Vector3d, 6> curls;
    for (int e = 0; e < 6; ++e) {
      const int a = kLocalEdges[e][0], b = kLocalEdges[e][1];
      curls[e] = 2.0 * signs[e] *
                 geo.grads.col(a).cross(geo.grads.col(b));
    }

    Eigen::Matrix<double, 6, 6> K = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 6> M = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<Complex, 6, 1> f = Eigen::Matrix<Complex, 6, 1>::Zero();

    for (const auto& qp : rule) {
      const Eigen::Vector3d xhat = geo.p0 + geo.edge * qp.x;
      const double c = def.slope(xhat[0]);
      const double scale = qp.w * 6.0 * geo.vol;  // J = det dT = 1
      const Eigen::Vector4d lam = shape_values(qp.x);

      std::array<Eigen::Vector3d, 6> pushed_curl, pushed_val;
      for (int e = 0; e < 6; ++e) {
        const int a = kLocalEdges[e][0], b = kLocalEdges[e][1];
        const Eigen::Vector3d phi =
            signs[e] * (lam[a] * geo.grads.col(b) - lam[b] * geo.grads.col(a));
        pushed_curl[e] = push_curl(curls[e], c);
        pushed_val[e] = push_covariant(phi, c);
      }
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
          K(i, j) += scale * pushed_curl[j].dot(pushed_curl[i]);
          M(i, j) += scale * pushed_val[j].dot(pushed_val[i]);
        }
      if (load != nullptr) {
        const Eigen::Vector3d phys = def.map_point(xhat);
        const Eigen::Vector3cd src =
            p.Jsrc ? p.Jsrc(phys) : default_source(phys);
        for (int i = 0; i < 6; ++i) {
          const Complex dot = src[0] * pushed_val[i][0] +
                              src[1] * pushed_val[i][1] +
                              src[2] * pushed_val[i][2];
          f[i] += minus_iw * scale * dot;
        }
      }
    }

    for (int i = 0; i < 6; ++i) {
      if (load != nullptr) (*load)[edges[i]] += f[i];
      for (int j = 0; j < 6; ++j) {
        if (system != nullptr)
          system->add(edges[i], edges[j],
                      inv_mu * K(i, j) - p.Lambda * M(i, j));
        if (curl_gram != nullptr)
          curl_gram->add(edges[i], edges[j], Complex(K(i, j), 0.0));
        if (mass_gram != nullptr)
          mass_gram->add(edges[i], edges[j], Complex(M(i, j), 0.0));
      }
    }
  }
}

}  // namespace

std::pair<SparseMatrixC, VectorC> assemble_maxwell(const Mesh& mesh,
                                                   const MaxwellProblem& p,
                                                   const ParamPoint& y) {
  const int N = static_cast<int>(mesh.edge_count());
  TripletAccumulator acc;
  acc.entries.reserve(mesh.tets.size() * 36 + mesh.edge_count());
  VectorC b = VectorC::Zero(N);
  element_loop(mesh, p, y, &acc, &b, nullptr, nullptr);

  // PEC elimination: keep full size, unit diagonal and zero load on the
  // boundary-edge block.
  const std::vector<bool> pec = boundary_edge_mask(mesh);
  TripletAccumulator reduced;
  reduced.entries.reserve(acc.entries.size());
  for (const auto& t : acc.entries)
    if (!pec[t.row()] && !pec[t.col()]) reduced.entries.push_back(t);
  for (int e = 0; e < N; ++e)
    if (pec[e]) {
      reduced.add(e, e, Complex(1.0, 0.0));
      b[e] = Complex(0.0, 0.0);
    }
  return {reduced.finalize(N, N), std::move(b)};
}

std::pair<SparseMatrixC, SparseMatrixC> assemble_maxwell_gram(
    const Mesh& mesh, const MaxwellProblem& p, const ParamPoint& y) {
  const int N = static_cast<int>(mesh.edge_count());
  TripletAccumulator K, M;
  K.entries.reserve(mesh.tets.size() * 36);
  M.entries.reserve(mesh.tets.size() * 36);
  element_loop(mesh, p, y, nullptr, nullptr, &K, &M);
  return {K.finalize(N, N), M.finalize(N, N)};
}

MaxwellOperator::MaxwellOperator(MaxwellProblem problem)
    : problem_(std::move(problem)), mesh_(build_cube_mesh(problem_.n)) {
  problem_.spec.validate();
  if (problem_.omega <= 0.0)
    throw std::invalid_argument("MaxwellOperator: omega must be positive");
  if (problem_.mu == Complex(0.0, 0.0))
    throw std::invalid_argument("MaxwellOperator: mu must be nonzero");
  scan_ = theta_scan(problem_.mu, problem_.Lambda);
  if (!(scan_.bound > 0.0))
    throw std::invalid_argument(
        "MaxwellOperator: no rotation e^{i theta} yields a coercive form "
        "(theta scan bound <= 0)");
  pec_ = boundary_edge_mask(mesh_);
}

VectorC MaxwellOperator::solve_hf(const ParamPoint& y) const {
  auto [A, b] = assemble(y);
  return solve_linear(A, b);
}

VectorC nedelec_interpolate(const Mesh& mesh, const VectorField& E) {
  // 3-point Gauss-Legendre on [0,1].
  const double g = std::sqrt(0.15);
  const double pts[3] = {0.5 - g, 0.5, 0.5 + g};
  const double wts[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
  VectorC dofs(mesh.edge_count());
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const Eigen::Vector3d a = mesh.vertices[mesh.edges[e][0]];
    const Eigen::Vector3d b = mesh.vertices[mesh.edges[e][1]];
    const Eigen::Vector3d d = b - a;
    Complex integral(0.0, 0.0);
    for (int q = 0; q < 3; ++q) {
      const Eigen::Vector3cd val = E(a + pts[q] * d);
      integral += wts[q] * (val[0] * d[0] + val[1] * d[1] + val[2] * d[2]);
    }
    dofs[e] = integral;
  }
  return dofs;
}

HcurlError hcurl_error(const Mesh& mesh, const VectorC& E_h,
                       const VectorField& E, const VectorField& curl_E) {
  const auto rule = tet_quadrature(4);
  double l2 = 0.0, curl_err = 0.0;
  for (std::size_t t = 0; t < mesh.tets.size(); ++t) {
    const auto& tet = mesh.tets[t];
    const TetGeometry geo = tet_geometry(mesh, tet);
    const auto& edges = mesh.tet_edges[t];
    const auto& signs = mesh.tet_edge_signs[t];

    Eigen::Vector3cd curl_h = Eigen::Vector3cd::Zero();
    for (int e = 0; e < 6; ++e) {
      const int a = kLocalEdges[e][0], b = kLocalEdges[e][1];
      const Eigen::Vector3d c =
          2.0 * signs[e] * geo.grads.col(a).cross(geo.grads.col(b));
      curl_h += E_h[edges[e]] * c.cast<Complex>();
    }
    for (const auto& qp : rule) {
      const Eigen::Vector3d x = geo.p0 + geo.edge * qp.x;
      const Eigen::Vector4d lam = shape_values(qp.x);
      Eigen::Vector3cd val = Eigen::Vector3cd::Zero();
      for (int e = 0; e < 6; ++e) {
        const int a = kLocalEdges[e][0], b = kLocalEdges[e][1];
        const Eigen::Vector3d phi =
            signs[e] *
            (lam[a] * geo.grads.col(b) - lam[b] * geo.grads.col(a));
        val += E_h[edges[e]] * phi.cast<Complex>();
      }
      const double scale = qp.w * 6.0 * geo.vol;
      l2 += scale * (val - E(x)).squaredNorm();
      if (curl_E) curl_err += scale * (curl_h - curl_E(x)).squaredNorm();
    }
  }
  l2 = std::max(l2, 0.0);
  curl_err = std::max(curl_err, 0.0);
  return {std::sqrt(l2), std::sqrt(l2 + curl_err)};
}

}  // namespace wrom
