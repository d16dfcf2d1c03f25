// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <utility>

#include "wrom/helmholtz.hpp"
#include "wrom/linalg.hpp"
#include "wrom/mesh.hpp"
#include "wrom/transform.hpp"

namespace wrom {

using VectorField = std::function<Eigen::Vector3cd(const Eigen::Vector3d&)>;

// Lossy cavity constants: Lambda = omega^2 eps - i omega sigma bundles the
// material response. The problem is well posed when some rotation e^{i theta}
// makes both Re{e^{i theta}/mu} and Re{-e^{i theta} Lambda} positive.
struct MaxwellProblem {
  double omega = 1.0;
  Complex mu{1.0, 0.0};
  Complex Lambda{1.0, -1.0};
  int n = 8;
  DecaySpec spec;
  VectorField Jsrc;  // physical current density; null -> (0,0,1) exp(-|x|^2)
};

struct ThetaScan {
  double theta = 0.0;
  double mu_b = 0.0;
  double lambda_b = 0.0;
  double bound = 0.0;  // min(mu_b, lambda_b) at the maximizing theta
};

// Maximizes min{Re{e^{i t}/mu}, Re{-e^{i t} Lambda}} over a uniform grid on
// [0, 2 pi); 1024 points by default.
ThetaScan theta_scan(Complex mu, Complex Lambda, int grid = 1024);

// Edges lying on the cube boundary (every edge of a boundary triangle).
std::vector<bool> boundary_edge_mask(const Mesh& mesh);

// Lowest-order first-kind Nedelec assembly of the pulled-back cavity form
//   a(u,v) = int J^-1 mu^-1 (dT curl u).(dT curl conj v)
//          - int Lambda J (dT^-T u).(dT^-T conj v),
//   l(v)   = -i omega int J (Jsrc.T).(dT^-T conj v),
// on the global low -> high edge orientation, order-2 quadrature. PEC is
// imposed by elimination: boundary-edge rows/columns are cleared with a unit
// diagonal and zero load, keeping the full edge count.
std::pair<SparseMatrixC, VectorC> assemble_maxwell(const Mesh& mesh,
                                                   const MaxwellProblem& p,
                                                   const ParamPoint& y);

// Unit-coefficient transported curl and mass grams (no PEC elimination):
// K = int (dT curl u).(dT curl v) J^-1, M = int (dT^-T u).(dT^-T v) J.
// Their sum is the parametric H(curl) gram entering the coercivity bound.
std::pair<SparseMatrixC, SparseMatrixC> assemble_maxwell_gram(
    const Mesh& mesh, const MaxwellProblem& p, const ParamPoint& y);

class MaxwellOperator {
 public:
  // Throws std::invalid_argument when the theta scan finds no positive bound
  // or parameters are out of range.
  explicit MaxwellOperator(MaxwellProblem problem);

  const Mesh& mesh() const { return mesh_; }
  const MaxwellProblem& problem() const { return problem_; }
  int dof_count() const { return static_cast<int>(mesh_.edge_count()); }
  const std::vector<bool>& pec_edges() const { return pec_; }
  const ThetaScan& scan() const { return scan_; }

  std::pair<SparseMatrixC, VectorC> assemble(const ParamPoint& y) const {
    return assemble_maxwell(mesh_, problem_, y);
  }
  std::pair<SparseMatrixC, SparseMatrixC> assemble_gram(
      const ParamPoint& y) const {
    return assemble_maxwell_gram(mesh_, problem_, y);
  }
  VectorC solve_hf(const ParamPoint& y) const;

 private:
  MaxwellProblem problem_;
  Mesh mesh_;
  std::vector<bool> pec_;
  ThetaScan scan_;
};

// Edge interpolant: DoF = line integral of E along the edge, low -> high.
VectorC nedelec_interpolate(const Mesh& mesh, const VectorField& E);

struct HcurlError {
  double l2 = 0.0;
  double hcurl = 0.0;  // full norm: sqrt(l2^2 + ||curl E_h - curl E||^2)
};

// Quadrature (order 4) norms of E_h - E on the undeformed mesh.
HcurlError hcurl_error(const Mesh& mesh, const VectorC& E_h,
                       const VectorField& E, const VectorField& curl_E);

}  // namespace wrom
