#include "stripmap/neumann_kernel.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "stripmap/fourier.hpp"

namespace stripmap {

CVector build_A(const BoundaryParametrization& bp, const std::vector<double>& theta, Complex alpha) {
  if (static_cast<int>(theta.size()) != bp.m + 1)
    throw std::invalid_argument("theta needs one angle per boundary component");
  if (!inside_domain(bp, alpha)) throw GeometryError("alpha is not strictly inside the domain");
  CVector A(bp.size());
  for (int k = 0; k < bp.size(); ++k)
    A[k] = std::polar(1.0, kHalfPi - theta[bp.component_of(k)]) * (bp.eta[k] - alpha);
  return A;
}

namespace {

// eta''/(2 eta') - A'/A at every node; the s -> t limit of the kernel product
// once its 1/(s-t) pole is removed. With alpha known, A'/A = eta'/(eta - alpha)
// since the phase of A is constant per component; otherwise A' is spectral.
CVector diagonal_limit(const BoundaryParametrization& bp, const CVector& A, std::optional<Complex> alpha) {
  const bool exact = bp.eta_ddot.size() == bp.size();
  CVector out(bp.size());
  for (int j = 0; j <= bp.m; ++j) {
    const CVector eta_ddot =
        exact ? CVector(bp.eta_ddot.segment(j * bp.n, bp.n)) : trig_derivative(CVector(bp.component_dot(j)));
    const CVector a = A.segment(j * bp.n, bp.n);
    const CVector a_dot = alpha ? CVector() : trig_derivative(a);
    for (int i = 0; i < bp.n; ++i) {
      const int k = j * bp.n + i;
      const Complex log_dot = alpha ? bp.eta_dot[k] / (bp.eta[k] - *alpha) : a_dot[i] / a[i];
      out[k] = eta_ddot[i] / (2.0 * bp.eta_dot[k]) - log_dot;
    }
  }
  return out;
}

void assemble(const BoundaryParametrization& bp, const CVector& A, std::optional<Complex> alpha, RMatrix* N,
              RMatrix* M1) {
  const int size = bp.size();
  const int n = bp.n;
  if (A.size() != size) throw std::invalid_argument("A sample count does not match the boundary");
  if (N) N->resize(size, size);
  if (M1) M1->resize(size, size);

  std::vector<double> half_cot(n, 0.0); // (1/2pi) cot(pi d / n) for offset d = i - j
  for (int d = 1; 2 * d <= n; ++d) {
    half_cot[d] = std::cos(kPi * d / n) / std::sin(kPi * d / n) / kTwoPi;
    half_cot[n - d] = -half_cot[d];
  }

  const CVector diag = diagonal_limit(bp, A, alpha);
  const NodeDifferences diff(bp);
  const double inv_pi = 1.0 / kPi;

  for (int j = 0; j < size; ++j) {
    const Complex B = bp.eta_dot[j] / A[j];
    const double ex = bp.eta[j].real(), ey = bp.eta[j].imag();
    const int cj = j / n;
    double* ncol = N ? N->col(j).data() : nullptr;
    double* mcol = M1 ? M1->col(j).data() : nullptr;
    for (int i = 0; i < size; ++i) {
      if (i == j) {
        if (ncol) ncol[i] = inv_pi * diag[j].imag();
        if (mcol) mcol[i] = inv_pi * diag[j].real();
        continue;
      }
      double dx = ex - bp.eta[i].real(), dy = ey - bp.eta[i].imag();
      if (i / n == cj) {
        const Complex d = diff(j, i);
        dx = d.real();
        dy = d.imag();
      }
      const double d2 = dx * dx + dy * dy;
      if (!(d2 > 1e-28)) {
        std::ostringstream os;
        os << "boundary nodes " << i << " and " << j << " coincide";
        throw GeometryError(os.str());
      }
      // A_i * B / (eta_j - eta_i) with the division written out
      const Complex AB = A[i] * B;
      const double p_re = (AB.real() * dx + AB.imag() * dy) / d2;
      const double p_im = (AB.imag() * dx - AB.real() * dy) / d2;
      if (ncol) ncol[i] = inv_pi * p_im;
      if (mcol) {
        double v = inv_pi * p_re;
        if (i / n == cj) v += half_cot[((i - j) % n + n) % n];
        mcol[i] = v;
      }
    }
  }
}

} // namespace

RMatrix build_N(const BoundaryParametrization& bp, const CVector& A) {
  RMatrix N;
  assemble(bp, A, std::nullopt, &N, nullptr);
  return N;
}

RMatrix build_M1(const BoundaryParametrization& bp, const CVector& A) {
  RMatrix M1;
  assemble(bp, A, std::nullopt, nullptr, &M1);
  return M1;
}

KernelSet build_kernels(const BoundaryParametrization& bp, const std::vector<double>& theta, Complex alpha) {
  KernelSet ks{bp, theta, alpha, build_A(bp, theta, alpha), {}, {}};
  assemble(ks.bp, ks.A, alpha, &ks.N, &ks.M1);
  return ks;
}

RVector KernelSet::apply_N(const RVector& x) const {
  RVector y = N * x;
  y *= bp.weight();
  return y;
}

RVector apply_M(const RVector& gamma, const BoundaryParametrization& bp, const RMatrix& M1) {
  RVector y = M1 * gamma;
  y *= bp.weight();
  for (int j = 0; j <= bp.m; ++j)
    y.segment(j * bp.n, bp.n) += cot_convolution(gamma.segment(j * bp.n, bp.n));
  return y;
}

RVector KernelSet::apply_M(const RVector& x) const { return stripmap::apply_M(x, bp, M1); }

} // namespace stripmap
