// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "wrom/helmholtz.hpp"
#include "wrom/pod.hpp"
#include "wrom/rng.hpp"
#include "wrom/rom.hpp"

using namespace wrom;

namespace {

HelmholtzOperator small_operator() {
  HelmholtzProblem p;
  p.kappa = 1.0;
  p.n = 2;
  p.spec.J = 3;
  return HelmholtzOperator(p);
}

ParamPoint sample_point() { return {0.3, -0.5, 0.8}; }

MatrixC random_matrix(int rows, int cols, uint64_t seed) {
  SplitMix64 rng(seed);
  MatrixC m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

}  // namespace

TEST_CASE("identity basis reproduces the full-order solution") {
  HelmholtzOperator op = small_operator();
  auto [A, b] = op.assemble(sample_point());
  VectorC hf = solve_linear(A, b);

  const int n = static_cast<int>(A.rows());
  ReducedBasis basis;
  basis.mean = VectorC::Zero(n);
  basis.V = MatrixC::Identity(n, n);
  basis.singular_values = Eigen::VectorXd::Ones(n);
  basis.L = n;

  VectorC lifted = gpod_solve(A, b, basis);
  CHECK((lifted - hf).norm() < 1e-10 * b.norm());
}

TEST_CASE("L=0 returns the mean") {
  HelmholtzOperator op = small_operator();
  auto [A, b] = op.assemble(sample_point());

  ReducedBasis basis;
  basis.mean = random_matrix(static_cast<int>(A.rows()), 1, 5).col(0);
  basis.V = MatrixC(A.rows(), 0);
  basis.singular_values = Eigen::VectorXd(0);
  basis.L = 0;

  CHECK((gpod_solve(A, b, basis) - basis.mean).norm() == 0.0);
}

TEST_CASE("exact recovery when the data lies on the affine span") {
  HelmholtzOperator op = small_operator();
  auto [A, b0] = op.assemble(sample_point());
  const int n = static_cast<int>(A.rows());

  ReducedBasis basis = centered_pod(random_matrix(n, 8, 17), 5);
  VectorC alpha = random_matrix(5, 1, 19).col(0);
  VectorC target = reconstruct(alpha, basis);
  VectorC b = A * target;

  VectorC c = gpod_coefficients(A, b, basis);
  CHECK((c - alpha).norm() < 1e-9 * alpha.norm());
  CHECK((gpod_solve(A, b, basis) - target).norm() < 1e-9 * target.norm());
  (void)b0;
}

TEST_CASE("Galerkin residual is orthogonal to the basis") {
  HelmholtzOperator op = small_operator();
  auto [A, b] = op.assemble(sample_point());
  const int n = static_cast<int>(A.rows());

  ReducedBasis basis = centered_pod(random_matrix(n, 10, 29), 6);
  VectorC lifted = gpod_solve(A, b, basis);
  VectorC projected = basis.V.adjoint() * (b - A * lifted);
  CHECK(projected.norm() < 1e-10 * b.norm());
}

TEST_CASE("shape mismatches are rejected") {
  HelmholtzOperator op = small_operator();
  auto [A, b] = op.assemble(sample_point());

  ReducedBasis basis = centered_pod(random_matrix(12, 6, 31), 3);
  CHECK_THROWS_AS(gpod_coefficients(A, b, basis), std::invalid_argument);
}
