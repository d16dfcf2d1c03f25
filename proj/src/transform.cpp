// SPDX-License-Identifier: MIT
#include "wrom/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace wrom {

void DecaySpec::validate() const {
  if (J == 0) throw std::invalid_argument("DecaySpec: J must be positive");
  if (theta <= 0.0)
    throw std::invalid_argument("DecaySpec: theta must be positive");
  if (family == Family::Algebraic) {
    if (r <= 1.0) throw std::invalid_argument("DecaySpec: requires r > 1");
  } else {
    if (nu <= 0.0) throw std::invalid_argument("DecaySpec: requires nu > 0");
    if (l <= 0.0) throw std::invalid_argument("DecaySpec: requires l > 0");
  }
}

double coefficient(std::size_t j, const DecaySpec& spec) {
  spec.validate();
  if (j < 1 || j > spec.J)
    throw std::invalid_argument("coefficient: j out of range");
  double mu;
  if (spec.family == DecaySpec::Family::Algebraic) {
    mu = spec.theta * std::pow(static_cast<double>(j), -(spec.r + 1.0));
  } else {
    const double a = 2.0 * spec.nu / (spec.l * spec.l);
    const double pj = M_PI * static_cast<double>(j);
    mu = spec.theta * std::pow(a, spec.nu) /
         std::pow(a + pj * pj, spec.nu + 0.5) *
         (std::tgamma(spec.nu + 0.5) / std::tgamma(spec.nu));
  }
  if (!std::isfinite(mu))
    throw std::domain_error("coefficient: non-finite evaluation");
  return mu;
}

double deformation_amplitude(const DecaySpec& spec) {
  double sum = 0.0;
  for (std::size_t j = 1; j <= spec.J; ++j) sum += coefficient(j, spec);
  return sum;
}

Deformation::Deformation(const ParamPoint& y, const DecaySpec& spec) {
  if (y.size() != spec.J)
    throw std::invalid_argument("Deformation: |y| != J");
  w.resize(spec.J);
  for (std::size_t j = 0; j < spec.J; ++j)
    w[j] = y[j] * coefficient(j + 1, spec);
}

double Deformation::displacement(double x1) const {
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j)
    s += w[j] * std::sin(M_PI * static_cast<double>(j + 1) * x1);
  return s;
}

double Deformation::slope(double x1) const {
  double s = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double pj = M_PI * static_cast<double>(j + 1);
    s += w[j] * pj * std::cos(pj * x1);
  }
  return s;
}

Eigen::Vector3d Deformation::map_point(const Eigen::Vector3d& xhat) const {
  return {xhat[0], xhat[1], xhat[2] + displacement(xhat[0])};
}

JacobianData Deformation::jacobian(const Eigen::Vector3d& xhat) const {
  const double c = slope(xhat[0]);
  JacobianData J;
  J.dT = Eigen::Matrix3d::Identity();
  J.dT(2, 0) = c;
  J.det = 1.0;  // unit lower-triangular
  J.inv_transpose = Eigen::Matrix3d::Identity();
  J.inv_transpose(0, 2) = -c;
  return J;
}

double Deformation::surface_jacobian(const Eigen::Vector3d& xhat,
                                     const Eigen::Vector3d& nu_hat) const {
  const JacobianData J = jacobian(xhat);
  return J.det * (J.inv_transpose * nu_hat).norm();
}

Eigen::Vector3d map_point(const Eigen::Vector3d& xhat, const ParamPoint& y,
                          const DecaySpec& spec) {
  return Deformation(y, spec).map_point(xhat);
}

JacobianData jacobian(const Eigen::Vector3d& xhat, const ParamPoint& y,
                      const DecaySpec& spec) {
  return Deformation(y, spec).jacobian(xhat);
}

double surface_jacobian(const Eigen::Vector3d& xhat,
                        const Eigen::Vector3d& nu_hat, const ParamPoint& y,
                        const DecaySpec& spec) {
  return Deformation(y, spec).surface_jacobian(xhat, nu_hat);
}

}  // namespace wrom
