#include "stripmap/elliptic.hpp"

#include <cmath>

#include "stripmap/common.hpp"

namespace stripmap {

namespace {

// K from the complementary modulus, which avoids cancellation near r = 1.
double K_from_complement(double rc) {
  double a = 1.0, b = rc;
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (a + b);
}

// mu given r and sqrt(1 - r^2) computed independently
double mu_pair(double r, double rc) { return kHalfPi * K_from_complement(r) / K_from_complement(rc); }

} // namespace

double elliptic_K(double r) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("elliptic_K needs 0 <= r < 1");
  return K_from_complement(std::sqrt((1.0 - r) * (1.0 + r)));
}

double mu(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("mu needs 0 < r < 1");
  return mu_pair(r, std::sqrt((1.0 - r) * (1.0 + r)));
}

double exact_cap_vertical(double s) {
  if (!(s > 0.0 && s < kHalfPi)) throw DomainError("vertical slit half-length must lie in (0, pi/2)");
  return kTwoPi / mu_pair(std::sin(s), std::cos(s));
}

double exact_cap_horizontal(double s) {
  if (!(s > 0.0)) throw DomainError("horizontal slit half-length must be positive");
  return kTwoPi / mu_pair(std::tanh(s), 1.0 / std::cosh(s));
}

} // namespace stripmap
