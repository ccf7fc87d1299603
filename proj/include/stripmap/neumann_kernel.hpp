#pragma once

#include <vector>

#include "stripmap/geometry.hpp"

namespace stripmap {

/// Discretized generalized Neumann kernel N and the continuous remainder M1
/// of the kernel M after its same-component cotangent singularity is removed.
///
/// Entry (i, j) is the kernel value at (s_i, t_j); the trapezoidal weight
/// 2 pi / n is applied by the operators, not stored in the matrices.
struct KernelSet {
  BoundaryParametrization bp;
  std::vector<double> theta; // per component, theta[0] = 0
  Complex alpha;
  CVector A;
  RMatrix N;
  RMatrix M1;

  /// (N x)(s_i) with trapezoidal weights.
  RVector apply_N(const RVector& x) const;
  /// (M x)(s_i): M1 part by quadrature, cotangent part spectrally per component.
  RVector apply_M(const RVector& x) const;
  /// x - N x, the operator of the boundary integral equation.
  RVector apply_I_minus_N(const RVector& x) const { return x - apply_N(x); }
};

/// A(t) = e^{i(pi/2 - theta(t))}(eta(t) - alpha). Throws GeometryError unless
/// alpha is strictly inside the domain bounded by bp.
CVector build_A(const BoundaryParametrization& bp, const std::vector<double>& theta, Complex alpha);

RMatrix build_N(const BoundaryParametrization& bp, const CVector& A);
RMatrix build_M1(const BoundaryParametrization& bp, const CVector& A);

/// Assembles A, N and M1 in one pass over the node pairs.
KernelSet build_kernels(const BoundaryParametrization& bp, const std::vector<double>& theta, Complex alpha);

/// Free-function form of KernelSet::apply_M for callers holding the parts.
RVector apply_M(const RVector& gamma, const BoundaryParametrization& bp, const RMatrix& M1);

} // namespace stripmap
