// SPDX-License-Identifier: MIT
#include "wrom/helmholtz.hpp"

#include "wrom/quadrature.hpp"

namespace wrom {

namespace {

constexpr int kVolumeOrder = 2;
constexpr int kBoundaryOrder = 2;

// Barycentric gradients and volume of a tet; grads column i is grad lambda_i.
struct TetGeometry {
  Eigen::Vector3d p0;
  Eigen::Matrix3d edge;  // columns p1-p0, p2-p0, p3-p0
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

Eigen::Vector4d shape_values(const Eigen::Vector3d& q) {
  return {1.0 - q[0] - q[1] - q[2], q[0], q[1], q[2]};
}

// dT^-T g for dT^-T = I - c*E_13: only the first component changes.
inline Eigen::Vector3d transport_grad(const Eigen::Vector3d& g, double c) {
  return {g[0] - c * g[2], g[1], g[2]};
}

}  // namespace

HelmholtzOperator::HelmholtzOperator(HelmholtzProblem problem)
    : problem_(std::move(problem)), mesh_(build_cube_mesh(problem_.n)) {
  problem_.spec.validate();
  if (problem_.kappa <= 0.0)
    throw std::invalid_argument("HelmholtzOperator: kappa must be positive");
}

std::pair<SparseMatrixC, VectorC> HelmholtzOperator::assemble(
    const ParamPoint& y) const {
  const Deformation def(y, problem_.spec);
  const double kappa2 = problem_.kappa * problem_.kappa;
  const int N = dof_count();

  const auto vol_rule = tet_quadrature(kVolumeOrder);
  const auto bdry_rule = triangle_quadrature(kBoundaryOrder);

  TripletAccumulator acc;
  acc.entries.reserve(mesh_.tets.size() * 16 +
                      mesh_.boundary_faces.size() * 9);
  VectorC b = VectorC::Zero(N);

  Eigen::Matrix<double, 3, 4> tg;
  for (const auto& tet : mesh_.tets) {
    const TetGeometry geo = tet_geometry(mesh_, tet);
    // Volume contributions are real; the imaginary part enters only through
    // the boundary term below.
    Eigen::Matrix4d local = Eigen::Matrix4d::Zero();
    Eigen::Vector4cd load = Eigen::Vector4cd::Zero();
    for (const auto& qp : vol_rule) {
      const Eigen::Vector3d xhat = geo.p0 + geo.edge * qp.x;
      const double c = def.slope(xhat[0]);
      const double scale = qp.w * 6.0 * geo.vol;  // det dT = 1
      for (int i = 0; i < 4; ++i)
        tg.col(i) = transport_grad(geo.grads.col(i), c);
      const Eigen::Vector4d lam = shape_values(qp.x);
      local += scale * (tg.transpose() * tg - kappa2 * lam * lam.transpose());
      const Complex fval =
          problem_.f ? problem_.f(def.map_point(xhat)) : Complex(1.0, 0.0);
      load += (scale * fval) * lam.cast<Complex>();
    }
    for (int i = 0; i < 4; ++i) {
      b[tet[i]] += load[i];
      for (int j = 0; j < 4; ++j)
        acc.add(tet[i], tet[j], Complex(local(i, j), 0.0));
    }
  }

  const Complex minus_ik(0.0, -problem_.kappa);
  for (const auto& face : mesh_.boundary_faces) {
    const Eigen::Vector3d a = mesh_.vertices[face.v[0]];
    const Eigen::Vector3d e1 = mesh_.vertices[face.v[1]] - a;
    const Eigen::Vector3d e2 = mesh_.vertices[face.v[2]] - a;
    const double area2 = e1.cross(e2).norm();  // twice the area
    Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
    Eigen::Vector3cd load = Eigen::Vector3cd::Zero();
    for (const auto& qp : bdry_rule) {
      const Eigen::Vector3d xhat = a + e1 * qp.x[0] + e2 * qp.x[1];
      const double js = def.surface_jacobian(xhat, face.normal);
      const double scale = qp.w * area2;  // rule weights sum to 1/2
      const Eigen::Vector3d lam(1.0 - qp.x[0] - qp.x[1], qp.x[0], qp.x[1]);
      local += (scale * js) * (lam * lam.transpose());
      if (problem_.g) {
        const JacobianData J = def.jacobian(xhat);
        const Eigen::Vector3d nu =
            (J.inv_transpose * face.normal).normalized();
        const Complex gval = problem_.g(def.map_point(xhat), nu);
        load += (scale * js * gval) * lam.cast<Complex>();
      }
    }
    for (int i = 0; i < 3; ++i) {
      b[face.v[i]] += load[i];
      for (int j = 0; j < 3; ++j)
        acc.add(face.v[i], face.v[j], minus_ik * local(i, j));
    }
  }

  return {acc.finalize(N, N), std::move(b)};
}

VectorC HelmholtzOperator::solve_hf(const ParamPoint& y) const {
  auto [A, b] = assemble(y);
  return solve_linear(A, b);
}

FieldError h1_error(const Mesh& mesh, const VectorC& u_h, const ScalarField& u,
                    const GradField& grad_u) {
  const auto rule = tet_quadrature(4);
  double l2 = 0.0, semi = 0.0;
  for (const auto& tet : mesh.tets) {
    const TetGeometry geo = tet_geometry(mesh, tet);
    Eigen::Vector3cd grad_h = Eigen::Vector3cd::Zero();
    for (int i = 0; i < 4; ++i) grad_h += u_h[tet[i]] * geo.grads.col(i);
    for (const auto& qp : rule) {
      const Eigen::Vector3d x = geo.p0 + geo.edge * qp.x;
      const Eigen::Vector4d lam = shape_values(qp.x);
      Complex uh(0.0, 0.0);
      for (int i = 0; i < 4; ++i) uh += u_h[tet[i]] * lam[i];
      const double scale = qp.w * 6.0 * geo.vol;
      l2 += scale * std::norm(uh - u(x));
      if (grad_u) semi += scale * (grad_h - grad_u(x)).squaredNorm();
    }
  }
  // The order-4 rule has negative weights, so an exactly-represented field
  // can sum to a tiny negative value; clamp before the square roots.
  l2 = std::max(l2, 0.0);
  semi = std::max(semi, 0.0);
  return {std::sqrt(l2), std::sqrt(l2 + semi)};
}

double integrate_volume(const Mesh& mesh, const Deformation& def,
                        const std::function<double(const Eigen::Vector3d&)>& w,
                        int order) {
  const auto rule = tet_quadrature(order);
  double sum = 0.0;
  for (const auto& tet : mesh.tets) {
    const TetGeometry geo = tet_geometry(mesh, tet);
    for (const auto& qp : rule) {
      const Eigen::Vector3d xhat = geo.p0 + geo.edge * qp.x;
      sum += qp.w * 6.0 * geo.vol * w(def.map_point(xhat));  // J = 1
    }
  }
  return sum;
}

double integrate_surface(const Mesh& mesh, const Deformation& def,
                         const std::function<double(const Eigen::Vector3d&)>& w,
                         int order) {
  const auto rule = triangle_quadrature(order);
  double sum = 0.0;
  for (const auto& face : mesh.boundary_faces) {
    const Eigen::Vector3d a = mesh.vertices[face.v[0]];
    const Eigen::Vector3d e1 = mesh.vertices[face.v[1]] - a;
    const Eigen::Vector3d e2 = mesh.vertices[face.v[2]] - a;
    const double area2 = e1.cross(e2).norm();
    for (const auto& qp : rule) {
      const Eigen::Vector3d xhat = a + e1 * qp.x[0] + e2 * qp.x[1];
      const double js = def.surface_jacobian(xhat, face.normal);
      sum += qp.w * area2 * js * w(def.map_point(xhat));
    }
  }
  return sum;
}

}  // namespace wrom
