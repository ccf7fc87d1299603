#include "stripmap/gmres.hpp"

#include <cmath>

namespace stripmap {

GmresResult gmres(const LinearOperator& op, const RVector& b, double tol, int maxit) {
  GmresResult res;
  const auto size = b.size();
  res.x = RVector::Zero(size);
  const double beta = b.norm();
  if (beta == 0.0) {
    res.converged = true;
    return res;
  }

  RMatrix V(size, maxit + 1);
  RMatrix H = RMatrix::Zero(maxit + 1, maxit);
  RVector cs(maxit), sn(maxit), g = RVector::Zero(maxit + 1);
  V.col(0) = b / beta;
  g[0] = beta;

  int k = 0;
  for (; k < maxit; ++k) {
    RVector w = op(V.col(k));
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= k; ++i) {
        const double h = V.col(i).dot(w);
        H(i, k) += h;
        w -= h * V.col(i);
      }
    }
    H(k + 1, k) = w.norm();
    if (H(k + 1, k) > 0.0) V.col(k + 1) = w / H(k + 1, k);

    for (int i = 0; i < k; ++i) {
      const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
      H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
      H(i, k) = t;
    }
    const double r = std::hypot(H(k, k), H(k + 1, k));
    cs[k] = H(k, k) / r;
    sn[k] = H(k + 1, k) / r;
    H(k, k) = r;
    H(k + 1, k) = 0.0;
    g[k + 1] = -sn[k] * g[k];
    g[k] = cs[k] * g[k];

    const double rel = std::abs(g[k + 1]) / beta;
    res.residuals.push_back(rel);
    if (rel <= tol) {
      ++k;
      res.converged = true;
      break;
    }
  }
  res.iterations = k;

  // back substitution on the k x k triangle
  RVector y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
  res.x = V.leftCols(k) * y;
  return res;
}

} // namespace stripmap
