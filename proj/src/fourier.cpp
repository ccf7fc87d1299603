#include "stripmap/fourier.hpp"

#include <vector>

#include <unsupported/Eigen/FFT>

#include "stripmap/geometry.hpp"

namespace stripmap {

namespace {

void require_pow2(Eigen::Index n) {
  if (!is_power_of_two(static_cast<int>(n)) || n < 2)
    throw DomainError("spectral operations need a power-of-two sample count");
}

int frequency(int k, int n) { return k < n / 2 ? k : k - n; }

std::vector<Complex> forward(const CVector& x) {
  static thread_local Eigen::FFT<double> fft;
  std::vector<Complex> in(x.data(), x.data() + x.size()), out;
  fft.fwd(out, in);
  return out;
}

CVector inverse(const std::vector<Complex>& X) {
  static thread_local Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.inv(out, X);
  return Eigen::Map<const CVector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

} // namespace

CVector trig_derivative(const CVector& samples) {
  const auto n = samples.size();
  require_pow2(n);
  auto X = forward(samples);
  const int nn = static_cast<int>(n);
  for (int k = 0; k < nn; ++k) {
    if (k == nn / 2) {
      X[k] = 0.0;
      continue;
    }
    X[k] *= Complex(0.0, frequency(k, nn));
  }
  return inverse(X);
}

CVector trig_upsample(const CVector& samples, int factor) {
  const auto n = samples.size();
  require_pow2(n);
  if (!is_power_of_two(factor)) throw DomainError("upsampling factor must be a power of two");
  if (factor == 1) return samples;
  const auto X = forward(samples);
  const int nn = static_cast<int>(n), big = nn * factor;
  std::vector<Complex> Y(big, 0.0);
  for (int k = 0; k < nn / 2; ++k) Y[k] = X[k];
  for (int k = nn / 2 + 1; k < nn; ++k) Y[big - nn + k] = X[k];
  Y[nn / 2] = 0.5 * X[nn / 2];
  Y[big - nn / 2] = 0.5 * X[nn / 2];
  CVector out = inverse(Y);
  out *= static_cast<double>(factor);
  return out;
}

RVector cot_convolution(const RVector& samples) {
  const auto n = samples.size();
  require_pow2(n);
  auto X = forward(samples.cast<Complex>());
  const int nn = static_cast<int>(n);
  X[0] = 0.0;
  X[nn / 2] = 0.0;
  for (int k = 1; k < nn / 2; ++k) X[k] *= kI;
  for (int k = nn / 2 + 1; k < nn; ++k) X[k] *= -kI;
  return inverse(X).real();
}

TrigInterpolant::TrigInterpolant(const CVector& samples) : n_(static_cast<int>(samples.size())) {
  require_pow2(n_);
  auto X = forward(samples);
  coeff_.resize(n_);
  for (int k = 0; k < n_; ++k) coeff_[k] = X[k] / static_cast<double>(n_);
}

Complex TrigInterpolant::eval(double t, int order) const {
  Complex sum = coeff_[0] * (order == 0 ? 1.0 : 0.0);
  for (int k = 1; k < n_; ++k) {
    if (k == n_ / 2) {
      // Nyquist mode interpolates as cos(n t / 2)
      const double w = 0.5 * n_;
      double v;
      switch (order) {
      case 0: v = std::cos(w * t); break;
      case 1: v = -w * std::sin(w * t); break;
      default: v = -w * w * std::cos(w * t); break;
      }
      sum += coeff_[k] * v;
      continue;
    }
    const double f = frequency(k, n_);
    Complex e = std::polar(1.0, f * t);
    if (order >= 1) e *= Complex(0.0, f);
    if (order >= 2) e *= Complex(0.0, f);
    sum += coeff_[k] * e;
  }
  return sum;
}

} // namespace stripmap
