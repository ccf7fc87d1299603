#include <doctest.h>

#include <cmath>

#include "stripmap/fourier.hpp"

using namespace stripmap;

namespace {

RVector sample(int n, auto f) {
  RVector v(n);
  for (int i = 0; i < n; ++i) v[i] = f(kTwoPi * i / n);
  return v;
}

} // namespace

TEST_CASE("spectral derivative of a trig polynomial") {
  const int n = 64;
  const CVector c = sample(n, [](double t) { return std::cos(3 * t) + 0.5 * std::sin(7 * t); }).cast<Complex>();
  const CVector d = trig_derivative(c);
  const RVector ref = sample(n, [](double t) { return -3 * std::sin(3 * t) + 3.5 * std::cos(7 * t); });
  CHECK((d.real() - ref).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(d.imag().cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("conjugation operator is exact on trig polynomials") {
  const int n = 128;
  const RVector g = sample(n, [](double t) { return 2.0 + std::cos(t) - 3 * std::sin(5 * t) + 0.25 * std::cos(40 * t); });
  const RVector ref = sample(n, [](double t) { return -std::sin(t) - 3 * std::cos(5 * t) - 0.25 * std::sin(40 * t); });
  CHECK((cot_convolution(g) - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("conjugation operator matches the principal value integral") {
  // Midpoint rule on the nodes offset by half a step is the classical PV
  // discretisation of the cotangent integral; it is spectrally accurate for
  // smooth data.
  const int n = 64;
  auto g = [](double t) { return std::exp(std::cos(t)) * std::sin(2 * t); };
  const RVector gs = sample(n, g);
  const RVector out = cot_convolution(gs);
  const int fine = 4096;
  for (int i : {0, 5, 33}) {
    const double s = kTwoPi * i / n;
    double sum = 0.0;
    for (int k = 0; k < fine; ++k) {
      const double t = s + kTwoPi * (k + 0.5) / fine;
      sum += 1.0 / std::tan((s - t) / 2) * g(t);
    }
    const double pv = -sum / fine;
    CHECK(std::abs(out[i] - pv) < 1e-10);
  }
}

TEST_CASE("trigonometric interpolant") {
  const int n = 32;
  auto f = [](double t) { return Complex(std::cos(2 * t), std::sin(5 * t)); };
  CVector s(n);
  for (int i = 0; i < n; ++i) s[i] = f(kTwoPi * i / n);
  const TrigInterpolant ip(s);
  CHECK(ip.size() == n);
  for (double t : {0.1, 1.234, 4.0}) {
    CHECK(std::abs(ip.value(t) - f(t)) < 1e-13);
    CHECK(std::abs(ip.derivative(t, 1) - Complex(-2 * std::sin(2 * t), 5 * std::cos(5 * t))) < 1e-12);
    CHECK(std::abs(ip.derivative(t, 2) - Complex(-4 * std::cos(2 * t), -25 * std::sin(5 * t))) < 1e-11);
  }
}

TEST_CASE("upsampling reproduces the interpolant") {
  const int n = 16;
  CVector s(n);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    s[i] = Complex(std::cos(3 * t) + std::cos(8 * t), std::sin(5 * t));
  }
  const CVector up = trig_upsample(s, 4);
  const TrigInterpolant ip(s);
  REQUIRE(up.size() == 64);
  for (int i = 0; i < 64; ++i) CHECK(std::abs(up[i] - ip.value(kTwoPi * i / 64)) < 1e-14);
  for (int i = 0; i < n; ++i) CHECK(std::abs(up[4 * i] - s[i]) < 1e-14);
  CHECK_THROWS(trig_upsample(s, 3));
}
