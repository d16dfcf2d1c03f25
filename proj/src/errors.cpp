// SPDX-License-Identifier: MIT
#include "wrom/errors.hpp"

#include <stdexcept>

namespace wrom {

double relative_error(const VectorC& approx, const VectorC& ref) {
  if (approx.size() != ref.size())
    throw std::invalid_argument("relative_error: size mismatch");
  const double norm = ref.norm();
  const double diff = (approx - ref).norm();
  return norm > 0.0 ? diff / norm : diff;
}

}  // namespace wrom
