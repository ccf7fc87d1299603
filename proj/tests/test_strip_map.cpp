#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stripmap/strip_map.hpp"

using namespace stripmap;

TEST_CASE("strip gamma data") {
  const EllipseParams e{{0.0, 0.5}, 1.0, 0.0, 0.4};
  const std::vector<EllipseParams> ps{e};
  const auto bp = build_preimage_boundary(ps, 64);
  const RVector g = strip_gamma(bp, {0.0, 0.0});
  CHECK(g.head(64).cwiseAbs().maxCoeff() == 0.0);
  const auto samples = parametrize_ellipse(e, 64);
  for (int i = 0; i < 64; ++i) CHECK(g[64 + i] == doctest::Approx(samples.eta[i].imag()).epsilon(1e-13));
  CHECK(g.tail(64).mean() == doctest::Approx(0.5).epsilon(1e-13));

  const RVector gv = strip_gamma(bp, {0.0, kHalfPi});
  for (int i = 0; i < 64; ++i) CHECK(gv[64 + i] == doctest::Approx(-samples.eta[i].real()).epsilon(1e-12));
}

TEST_CASE("without holes the map is psi") {
  const auto bp = build_preimage_boundary({}, 128);
  const auto md = build_map(bp, {0.0}, 0.0);
  CHECK(std::abs(md.f_at_i) < 1e-14);
  CHECK(std::abs(md.zeta[32] - Complex(0.0, kHalfPi)) < 1e-14);
  CHECK(std::isinf(std::abs(md.zeta[0])));
  CHECK(std::isinf(std::abs(md.zeta[64])));
  const std::vector<Complex> w{Complex(0.2, 0.3), Complex(-0.5, -0.1)};
  const auto z = evaluate_map(md, w);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(z[i] - psi(w[i])) < 1e-13);
  CHECK(extract_slit_images(md).empty());
}

namespace {

MapData synthetic(const std::vector<double>& theta, auto trace, int n) {
  MapData md;
  md.bp.n = n;
  md.bp.m = static_cast<int>(theta.size()) - 1;
  md.theta = theta;
  md.zeta = CVector::Zero((md.bp.m + 1) * n);
  for (int j = 1; j <= md.bp.m; ++j)
    for (int i = 0; i < n; ++i) md.zeta[j * n + i] = trace(j, kTwoPi * i / n);
  return md;
}

} // namespace

TEST_CASE("slit images from synthetic traces") {
  const Complex c1(1.0, 0.3), c2(-2.0, -0.4);
  const double th2 = 0.7;
  auto trace = [&](int j, double t) {
    if (j == 1) return c1 + 0.75 * std::cos(t);
    return c2 + std::polar(1.0, th2) * 0.5 * std::cos(t + 0.3);
  };
  const auto md = synthetic({0.0, 0.0, th2}, trace, 64);

  const auto nodes = extract_slit_images(md, SlitExtraction::Nodes);
  REQUIRE(nodes.size() == 2);
  CHECK(std::abs(nodes[0].center - c1) < 1e-15);
  CHECK(nodes[0].length == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(nodes[1].theta == th2);
  // extremes between nodes: node mode is short by O(h^2)
  CHECK(nodes[1].length < 1.0);
  CHECK(nodes[1].length > 1.0 - 0.5 * std::pow(kTwoPi / 64, 2));

  const auto interp = extract_slit_images(md, SlitExtraction::Interpolated);
  CHECK(std::abs(interp[0].center - c1) < 1e-14);
  CHECK(interp[0].length == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(std::abs(interp[1].center - c2) < 1e-14);
  CHECK(interp[1].length == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("a degenerate trace is rejected") {
  const auto md = synthetic({0.0, 0.0}, [](int, double) { return Complex(1.0, 0.2); }, 16);
  CHECK_THROWS_AS(extract_slit_images(md), GeometryError);
}

TEST_CASE("map onto a strip with one oblique slit") {
  const double theta = kPi / 3;
  const std::vector<EllipseParams> ps{{{0.5, -0.2}, 1.2, theta, 0.3}};
  const int n = 512;
  const auto bp = build_preimage_boundary(ps, n);
  const auto md = build_map(bp, {0.0, theta}, default_alpha(bp));

  CHECK(std::abs(md.zeta[n / 4] - Complex(0.0, kHalfPi)) < 1e-13);
  double wall = 0.0;
  for (int i = 1; i < n; ++i) {
    if (i == n / 2) continue;
    const double expect = i < n / 2 ? kHalfPi : -kHalfPi;
    wall = std::max(wall, std::abs(md.zeta[i].imag() - expect));
  }
  CHECK(wall < 1e-12);

  const CVector along = std::polar(1.0, -theta) * md.zeta.segment(n, n);
  const RVector across = along.imag();
  CHECK(across.maxCoeff() - across.minCoeff() < 1e-11);

  // Interior map values agree with the trace continued inward.
  const std::vector<Complex> w{Complex(0.1, 0.6), Complex(-0.4, -0.5), Complex(0.7, 0.1)};
  const auto z = evaluate_map(md, w);
  const auto back = inverse_map(md, z);
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(back[i] - w[i]) < 1e-8);

  std::vector<Complex> grid;
  for (double x = -3.0; x <= 3.0; x += 0.5)
    for (double y = -1.4; y <= 1.4; y += 0.35) {
      const Complex p(x, y);
      const auto im = extract_slit_images(md)[0];
      const Complex d = std::polar(1.0, theta) * (0.5 * im.length);
      const double dist = std::abs((p - im.center) - std::clamp(std::real((p - im.center) / d), -1.0, 1.0) * d);
      if (dist > 0.05) grid.push_back(p);
    }
  const auto pre = inverse_map(md, grid);
  const auto round = evaluate_map(md, pre);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(round[i] - grid[i]));
  CHECK(worst <= 1e-8);

  std::vector<Complex> outside{Complex(0.0, 2.0)};
  CHECK_THROWS_AS(inverse_map(md, outside), GeometryError);
  std::vector<Complex> off{Complex(1.2, 0.0)};
  CHECK_THROWS_AS(evaluate_map(md, off), GeometryError);
}

TEST_CASE("boundary csv") {
  const auto bp = build_preimage_boundary({}, 8);
  const auto md = build_map(bp, {0.0}, 0.0);
  std::ostringstream os;
  write_boundary_csv(md, os);
  const std::string s = os.str();
  CHECK(s.rfind("node,component,eta_re,eta_im,zeta_re,zeta_im,f_re,f_im", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 9);
}
