// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <utility>

#include "wrom/linalg.hpp"
#include "wrom/mesh.hpp"
#include "wrom/transform.hpp"

namespace wrom {

using ScalarField = std::function<Complex(const Eigen::Vector3d&)>;
// Boundary data may depend on the physical outward unit normal as well.
using BoundaryField =
    std::function<Complex(const Eigen::Vector3d&, const Eigen::Vector3d&)>;

// Helmholtz impedance problem pulled back to the reference cube. Sources are
// given on the physical domain and transported by composition with the map;
// null callables mean the experiment defaults f = 1, g = 0.
struct HelmholtzProblem {
  double kappa = 1.0;
  int n = 8;
  DecaySpec spec;
  ScalarField f;
  BoundaryField g;
};

// P1 Lagrange discretization:
//   a(v,w) = int (dT^-T grad v).(dT^-T grad w) J - kappa^2 v w J
//            - i kappa int_bdry v w J_S,
//   l(v)   = int (f.T) v J + int_bdry (g.T) v J_S,
// assembled with order-2 volume and boundary rules, Jacobian data evaluated
// at each quadrature point. A is complex symmetric, not Hermitian.
class HelmholtzOperator {
 public:
  explicit HelmholtzOperator(HelmholtzProblem problem);

  const Mesh& mesh() const { return mesh_; }
  const HelmholtzProblem& problem() const { return problem_; }
  int dof_count() const { return static_cast<int>(mesh_.vertex_count()); }

  std::pair<SparseMatrixC, VectorC> assemble(const ParamPoint& y) const;
  VectorC solve_hf(const ParamPoint& y) const;

 private:
  HelmholtzProblem problem_;
  Mesh mesh_;
};

struct FieldError {
  double l2 = 0.0;
  double h1 = 0.0;  // full norm: sqrt(l2^2 + seminorm^2)
};

using GradField = std::function<Eigen::Vector3cd(const Eigen::Vector3d&)>;

// Quadrature (order 4) approximation of ||u_h - u|| on the undeformed mesh.
FieldError h1_error(const Mesh& mesh, const VectorC& u_h, const ScalarField& u,
                    const GradField& grad_u);

// Pullback integration helpers sharing the assembly transport: integral of w
// over the deformed volume D(y) resp. surface bdry D(y), computed on the
// reference mesh as (w.T) J resp. (w.T) J_S.
double integrate_volume(const Mesh& mesh, const Deformation& def,
                        const std::function<double(const Eigen::Vector3d&)>& w,
                        int order = 2);
double integrate_surface(const Mesh& mesh, const Deformation& def,
                         const std::function<double(const Eigen::Vector3d&)>& w,
                         int order = 2);

}  // namespace wrom
