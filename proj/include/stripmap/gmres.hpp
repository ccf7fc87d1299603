#pragma once

#include <functional>
#include <vector>

#include "stripmap/common.hpp"

namespace stripmap {

using LinearOperator = std::function<RVector(const RVector&)>;

struct GmresResult {
  RVector x;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residuals; // relative residual estimate after each step
};

/// Unrestarted GMRES with zero initial guess. Stops once the Arnoldi residual
/// estimate drops below tol * ||b|| or after maxit steps. Orthogonalization
/// is modified Gram-Schmidt with one reorthogonalization pass.
GmresResult gmres(const LinearOperator& op, const RVector& b, double tol, int maxit);

} // namespace stripmap
