#pragma once

namespace stripmap {

/// Complete elliptic integral of the first kind K(r) = pi / (2 AGM(1, sqrt(1 - r^2))).
double elliptic_K(double r);

/// Modulus of the Groetzsch ring, (pi/2) K(sqrt(1 - r^2)) / K(r), for 0 < r < 1.
double mu(double r);

/// cap(S, [-s i, s i]) = 2 pi / mu(sin s), 0 < s < pi/2.
double exact_cap_vertical(double s);

/// cap(S, [-s, s]) = 2 pi / mu(tanh s), s > 0.
double exact_cap_horizontal(double s);

} // namespace stripmap
