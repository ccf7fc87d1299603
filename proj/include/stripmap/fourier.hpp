#pragma once

#include "stripmap/common.hpp"

namespace stripmap {

/// Spectral derivative of samples of a smooth 2pi-periodic function taken at
/// t_i = 2 pi i / n. The Nyquist mode is dropped. n must be a power of two.
CVector trig_derivative(const CVector& samples);

/// Singular convolution -(1/2pi) PV int cot((s-t)/2) g(t) dt evaluated as a
/// Fourier multiplier: mode k is scaled by i sign(k), the constant and
/// Nyquist modes are removed. Real in, real out.
RVector cot_convolution(const RVector& samples);

/// Values of the trigonometric interpolant at factor * n equidistant points.
/// The Nyquist mode is split evenly between +n/2 and -n/2.
CVector trig_upsample(const CVector& samples, int factor);

/// Trigonometric interpolant of one periodic sample vector, evaluable at
/// arbitrary t together with its first two derivatives.
class TrigInterpolant {
public:
  explicit TrigInterpolant(const CVector& samples);

  Complex value(double t) const { return eval(t, 0); }
  Complex derivative(double t, int order) const { return eval(t, order); }

  int size() const { return n_; }

private:
  Complex eval(double t, int order) const;

  int n_;
  CVector coeff_; // coefficient of e^{ikt}, k in natural FFT order
};

} // namespace stripmap
