// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "wrom/sampling.hpp"

namespace wrom {

// Decay family scaling the sinusoidal deformation modes. Algebraic:
// mu_j = theta * j^-(r+1). Matern: mu_j = theta * a^nu / (a + pi^2 j^2)^(nu+1/2)
// * Gamma(nu+1/2)/Gamma(nu) with a = 2 nu / l^2.
struct DecaySpec {
  enum class Family { Algebraic, Matern };
  Family family = Family::Algebraic;
  double r = 2.0;      // Algebraic only, requires r > 1
  double nu = 0.5;     // Matern only
  double l = 0.1;      // Matern only
  double theta = 0.1;  // both families
  std::size_t J = 10;

  // Throws std::invalid_argument on parameter-range violations.
  void validate() const;
};

// mu_j for 1 <= j <= spec.J. Throws std::invalid_argument on j out of range
// and std::domain_error if the evaluation is not finite.
double coefficient(std::size_t j, const DecaySpec& spec);

// Sum of mu_j over the truncation; amplitudes above 1 allow cube faces to
// self-intersect (callers should warn, not reject).
double deformation_amplitude(const DecaySpec& spec);

struct JacobianData {
  Eigen::Matrix3d dT;
  double det = 1.0;
  Eigen::Matrix3d inv_transpose;
};

// Caches w_j = y_j * mu_j so per-point evaluation inside assembly loops is a
// single pass over the modes.
struct Deformation {
  std::vector<double> w;

  Deformation(const ParamPoint& y, const DecaySpec& spec);

  // sum_j w_j sin(pi j x1)
  double displacement(double x1) const;
  // d/dx1 of the displacement: sum_j w_j pi j cos(pi j x1)
  double slope(double x1) const;

  Eigen::Vector3d map_point(const Eigen::Vector3d& xhat) const;
  JacobianData jacobian(const Eigen::Vector3d& xhat) const;
  double surface_jacobian(const Eigen::Vector3d& xhat,
                          const Eigen::Vector3d& nu_hat) const;
};

// Convenience wrappers constructing the Deformation on the fly.
Eigen::Vector3d map_point(const Eigen::Vector3d& xhat, const ParamPoint& y,
                          const DecaySpec& spec);
JacobianData jacobian(const Eigen::Vector3d& xhat, const ParamPoint& y,
                      const DecaySpec& spec);
double surface_jacobian(const Eigen::Vector3d& xhat,
                        const Eigen::Vector3d& nu_hat, const ParamPoint& y,
                        const DecaySpec& spec);

}  // namespace wrom
