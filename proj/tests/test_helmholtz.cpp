// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wrom/helmholtz.hpp"
#include "wrom/quadrature.hpp"
#include "wrom/rng.hpp"

using namespace wrom;

namespace {

DecaySpec matern_spec(std::size_t J) {
  DecaySpec s;
  s.family = DecaySpec::Family::Matern;
  s.nu = 0.5;
  s.l = 0.1;
  s.theta = 0.1;
  s.J = J;
  return s;
}

ParamPoint random_y(SplitMix64& rng, std::size_t J) {
  ParamPoint y(J);
  for (double& v : y) v = rng.uniform(-1.0, 1.0);
  return y;
}

// Independent undeformed-cube P1 assembly from the closed-form element
// matrices: stiffness vol*gi.gj, mass vol(1+delta)/20, boundary mass
// area(1+delta)/12. No quadrature anywhere.
SparseMatrixC oracle_cube_matrix(const Mesh& mesh, double kappa) {
  const int N = static_cast<int>(mesh.vertex_count());
  TripletAccumulator acc;
  for (const auto& tet : mesh.tets) {
    Eigen::Matrix4d V;
    for (int i = 0; i < 4; ++i) {
      V(i, 0) = 1.0;
      V.row(i).tail(3) = mesh.vertices[tet[i]].transpose();
    }
    const Eigen::Matrix4d C = V.inverse();  // row 1..3 of col i: grad lambda_i
    const double vol = std::abs(V.determinant()) / 6.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const double kij = vol * C.col(i).tail(3).dot(C.col(j).tail(3));
        const double mij = vol * (i == j ? 2.0 : 1.0) / 20.0;
        acc.add(tet[i], tet[j], Complex(kij - kappa * kappa * mij, 0.0));
      }
  }
  for (const auto& f : mesh.boundary_faces) {
    const Eigen::Vector3d e1 = mesh.vertices[f.v[1]] - mesh.vertices[f.v[0]];
    const Eigen::Vector3d e2 = mesh.vertices[f.v[2]] - mesh.vertices[f.v[0]];
    const double area = 0.5 * e1.cross(e2).norm();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        acc.add(f.v[i], f.v[j],
                Complex(0.0, -kappa) * (area * (i == j ? 2.0 : 1.0) / 12.0));
  }
  return acc.finalize(N, N);
}

}  // namespace

TEST_CASE("undeformed assembly matches closed-form element matrices") {
  HelmholtzProblem p;
  p.kappa = 1.3;
  p.n = 3;
  p.spec = matern_spec(4);
  const HelmholtzOperator op(p);
  const ParamPoint y0(4, 0.0);
  const auto [A, b] = op.assemble(y0);
  const SparseMatrixC O = oracle_cube_matrix(op.mesh(), p.kappa);
  const SparseMatrixC diff = A - O;
  double max_abs = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(diff, k); it; ++it)
      max_abs = std::max(max_abs, std::abs(it.value()));
  CHECK(max_abs < 1e-12);
}

TEST_CASE("default load vector is the mass-matrix row sum") {
  HelmholtzProblem p;
  p.kappa = 1.0;
  p.n = 2;
  p.spec = matern_spec(3);
  const HelmholtzOperator op(p);
  const ParamPoint y0(3, 0.0);
  const auto [A, b] = op.assemble(y0);

  // Same closed-form mass as the oracle above, f = 1 pairs phi_i against 1.
  VectorC expected = VectorC::Zero(op.dof_count());
  for (const auto& tet : op.mesh().tets) {
    Eigen::Matrix4d V;
    for (int i = 0; i < 4; ++i) {
      V(i, 0) = 1.0;
      V.row(i).tail(3) = op.mesh().vertices[tet[i]].transpose();
    }
    const double vol = std::abs(V.determinant()) / 6.0;
    for (int i = 0; i < 4; ++i) expected[tet[i]] += vol / 4.0;
  }
  CHECK((b - expected).norm() < 1e-12);
  // And the b entries sum to the cube volume.
  CHECK(std::abs(b.sum() - Complex(8.0, 0.0)) < 1e-12);
}

TEST_CASE("matrix is complex symmetric for deformed domains") {
  HelmholtzProblem p;
  p.kappa = 1.0;
  p.n = 2;
  p.spec = matern_spec(5);
  const HelmholtzOperator op(p);
  SplitMix64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto [A, b] = op.assemble(random_y(rng, 5));
    const SparseMatrixC At = SparseMatrixC(A.transpose());
    const SparseMatrixC diff = A - At;
    double max_abs = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
      for (SparseMatrixC::InnerIterator it(diff, k); it; ++it)
        max_abs = std::max(max_abs, std::abs(it.value()));
    CHECK(max_abs < 1e-13);
  }
}

TEST_CASE("boundary term gives nonpositive imaginary energy") {
  HelmholtzProblem p;
  p.kappa = 2.0;
  p.n = 2;
  p.spec = matern_spec(5);
  const HelmholtzOperator op(p);
  SplitMix64 rng(17);
  const auto [A, b] = op.assemble(random_y(rng, 5));
  for (int trial = 0; trial < 20; ++trial) {
    VectorC v(op.dof_count());
    for (int i = 0; i < v.size(); ++i)
      v[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const Complex energy = v.dot(A * v);  // v^H A v
    CHECK(energy.imag() <= 1e-12 * v.squaredNorm());
  }
}

TEST_CASE("assembly is bitwise deterministic") {
  HelmholtzProblem p;
  p.n = 2;
  p.spec = matern_spec(4);
  const HelmholtzOperator op(p);
  SplitMix64 rng(23);
  const ParamPoint y = random_y(rng, 4);
  const auto [A1, b1] = op.assemble(y);
  const auto [A2, b2] = op.assemble(y);
  REQUIRE(A1.nonZeros() == A2.nonZeros());
  CHECK(std::memcmp(A1.valuePtr(), A2.valuePtr(),
                    sizeof(Complex) * A1.nonZeros()) == 0);
  CHECK(std::memcmp(b1.data(), b2.data(), sizeof(Complex) * b1.size()) == 0);
}

TEST_CASE("pullback volume integral: assembly transport vs change of variables") {
  const DecaySpec spec = matern_spec(6);
  SplitMix64 rng(31);
  const ParamPoint y = random_y(rng, 6);
  const Deformation def(y, spec);
  const Mesh mesh = build_cube_mesh(4);

  const auto w = [](const Eigen::Vector3d& x) { return x[2] * x[2]; };

  // Reference-side quadrature with this test's own transport of w.
  const auto rule = tet_quadrature(2);
  double own = 0.0;
  for (const auto& tet : mesh.tets) {
    const Eigen::Vector3d p0 = mesh.vertices[tet[0]];
    Eigen::Matrix3d E;
    for (int c = 0; c < 3; ++c) E.col(c) = mesh.vertices[tet[c + 1]] - p0;
    const double vol = E.determinant() / 6.0;
    for (const auto& qp : rule) {
      const Eigen::Vector3d xh = p0 + E * qp.x;
      double disp = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j)
        disp += y[j] * coefficient(j + 1, spec) *
                std::sin(M_PI * double(j + 1) * xh[0]);
      own += qp.w * 6.0 * vol * w({xh[0], xh[1], xh[2] + disp});
    }
  }
  const double lib = integrate_volume(mesh, def, w);
  CHECK(std::abs(lib - own) < 1e-10);

  // Convergence to the closed form 8/3 + 4 sum (y_j mu_j)^2.
  double exact = 8.0 / 3.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double wj = y[j] * coefficient(j + 1, spec);
    exact += 4.0 * wj * wj;
  }
  const double coarse = integrate_volume(build_cube_mesh(4), def, w, 2);
  const double fine = integrate_volume(build_cube_mesh(8), def, w, 2);
  CHECK(std::abs(fine - exact) < std::abs(coarse - exact));
  CHECK(fine == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("pullback surface integral reproduces the deformed area") {
  const DecaySpec spec = matern_spec(6);
  SplitMix64 rng(37);
  const ParamPoint y = random_y(rng, 6);
  const Deformation def(y, spec);

  // Exact area: 4 rigid side faces of area 4 each, plus top and bottom
  // 2 * int_{-1}^{1} 2 sqrt(1 + slope^2) dx1, via fine Simpson on this
  // test's own slope formula.
  const int S = 4000;
  double arc = 0.0;
  const auto integrand = [&](double t) {
    double slope = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double pj = M_PI * double(j + 1);
      slope += y[j] * coefficient(j + 1, spec) * pj * std::cos(pj * t);
    }
    return std::sqrt(1.0 + slope * slope);
  };
  const double h = 2.0 / S;
  for (int s = 0; s < S; ++s) {
    const double t0 = -1.0 + s * h;
    arc += h / 6.0 *
           (integrand(t0) + 4.0 * integrand(t0 + 0.5 * h) + integrand(t0 + h));
  }
  const double exact = 16.0 + 4.0 * arc;

  const auto one = [](const Eigen::Vector3d&) { return 1.0; };
  const double fine = integrate_surface(build_cube_mesh(8), def, one, 2);
  CHECK(fine == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("manufactured quadratic converges under refinement") {
  // u = x1^2 solves -lap u - k^2 u = f with f = -2 - k^2 x1^2 and impedance
  // data g = du/dnu - i k u on the cube.
  const double kappa = 1.0;
  auto make = [&](int n) {
    HelmholtzProblem p;
    p.kappa = kappa;
    p.n = n;
    p.spec = matern_spec(2);
    p.f = [&](const Eigen::Vector3d& x) {
      return Complex(-2.0 - kappa * kappa * x[0] * x[0], 0.0);
    };
    p.g = [&](const Eigen::Vector3d& x, const Eigen::Vector3d& nu) {
      return Complex(2.0 * x[0] * nu[0], 0.0) -
             Complex(0.0, kappa) * (x[0] * x[0]);
    };
    return HelmholtzOperator(p);
  };
  const auto u = [](const Eigen::Vector3d& x) {
    return Complex(x[0] * x[0], 0.0);
  };
  const auto grad_u = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3cd(Complex(2.0 * x[0], 0.0), 0.0, 0.0);
  };

  const ParamPoint y0(2, 0.0);
  double prev_l2 = 0.0;
  std::vector<double> l2s;
  for (int n : {2, 4, 8}) {
    const HelmholtzOperator op = make(n);
    const VectorC uh = op.solve_hf(y0);
    const FieldError err = h1_error(op.mesh(), uh, u, grad_u);
    l2s.push_back(err.l2);
    (void)prev_l2;
    prev_l2 = err.l2;
  }
  CHECK(l2s[0] / l2s[1] > 2.5);  // asymptotic rate 4 in L2
  CHECK(l2s[1] / l2s[2] > 3.0);
}

TEST_CASE("solution is continuous at the nominal parameter") {
  HelmholtzProblem p;
  p.n = 3;
  p.spec = matern_spec(3);
  const HelmholtzOperator op(p);
  const VectorC u0 = op.solve_hf({0.0, 0.0, 0.0});
  const VectorC u1 = op.solve_hf({1e-12, 0.0, 0.0});
  CHECK((u0 - u1).norm() / u0.norm() < 1e-8);
}

TEST_CASE("h1_error basics") {
  const Mesh mesh = build_cube_mesh(2);
  // Linear fields interpolate exactly.
  const auto lin = [](const Eigen::Vector3d& x) {
    return Complex(1.0 + 2.0 * x[0] - x[1] + 0.5 * x[2], 0.0);
  };
  const auto grad_lin = [](const Eigen::Vector3d&) {
    return Eigen::Vector3cd(2.0, -1.0, 0.5);
  };
  VectorC nodal(mesh.vertex_count());
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i)
    nodal[i] = lin(mesh.vertices[i]);
  const FieldError e = h1_error(mesh, nodal, lin, grad_lin);
  CHECK(e.l2 < 1e-12);
  CHECK(e.h1 < 1e-12);

  // Zero field against u = 1: error is the L2 norm of 1, sqrt(8).
  const FieldError z = h1_error(
      mesh, VectorC::Zero(mesh.vertex_count()),
      [](const Eigen::Vector3d&) { return Complex(1.0, 0.0); },
      [](const Eigen::Vector3d&) { return Eigen::Vector3cd::Zero(); });
  CHECK(z.l2 == doctest::Approx(std::sqrt(8.0)).epsilon(1e-12));

  // Nodal interpolant of x1^2: h1 error roughly halves per refinement.
  const auto quad = [](const Eigen::Vector3d& x) {
    return Complex(x[0] * x[0], 0.0);
  };
  const auto grad_quad = [](const Eigen::Vector3d& x) {
    return Eigen::Vector3cd(Complex(2.0 * x[0], 0.0), 0.0, 0.0);
  };
  double h1_coarse = 0.0, h1_fine = 0.0;
  for (int n : {2, 4}) {
    const Mesh m = build_cube_mesh(n);
    VectorC v(m.vertex_count());
    for (std::size_t i = 0; i < m.vertex_count(); ++i)
      v[i] = quad(m.vertices[i]);
    const FieldError err = h1_error(m, v, quad, grad_quad);
    (n == 2 ? h1_coarse : h1_fine) = err.h1;
  }
  CHECK(h1_coarse / h1_fine > 1.8);
  CHECK(h1_coarse / h1_fine < 2.6);
}
