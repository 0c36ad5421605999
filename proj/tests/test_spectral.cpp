#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vll/ball.hpp"
#include "vll/mollifier.hpp"
#include "vll/spectral.hpp"

using namespace vll;
using namespace vll::test;

TEST_CASE("make_grid basics") {
  TorusGrid g = make_grid(4);
  CHECK(g.spacing() == doctest::Approx(two_pi / 4).epsilon(1e-15));
  CHECK_THROWS(make_grid(3));
  CHECK_THROWS(make_grid(2));
  CHECK(make_grid(128).size() == 16384);
}

TEST_CASE("fft round trip is identity") {
  TorusGrid g = make_grid(96);
  ScalarField f = random_smooth_vorticity(g, 7);
  ScalarField back = inverse(forward(f));
  CHECK(rel_l2_diff(back, f) < 1e-13);
}

TEST_CASE("biot_savart single mode identity") {
  TorusGrid g = make_grid(64);
  ScalarField w(g);
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) w.at(r, c) = -std::cos(g.x2(r));
  VectorField u = biot_savart(w);
  double err = 0.0;
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) {
      err = std::max(err, std::fabs(u.u1[r * 64 + c] - std::sin(g.x2(r))));
      err = std::max(err, std::fabs(u.u2[r * 64 + c]));
    }
  CHECK(err < 1e-12);
}

TEST_CASE("biot_savart zero field and mean rejection") {
  TorusGrid g = make_grid(32);
  ScalarField z(g);
  VectorField u = biot_savart(z);
  CHECK(u.max_abs() == 0.0);

  ScalarField c1(g);
  for (auto& v : c1.values) v = 1.0;
  CHECK_THROWS(biot_savart(c1));
}

TEST_CASE("biot_savart round trip and divergence on random fields") {
  TorusGrid g = make_grid(128);
  for (unsigned seed : {1u, 2u, 3u}) {
    ScalarField w = random_smooth_vorticity(g, seed);
    VectorField u = biot_savart(w);
    ScalarField back = curl(u);
    CHECK(rel_l2_diff(back, w) < 1e-12);
    SpectralField u1h = forward(ScalarField(g, u.u1));
    double umax = 0.0;
    for (auto& z : u1h.coeffs) umax = std::max(umax, std::abs(z));
    CHECK(divergence_max(u) < 1e-10 * umax);
  }
}

TEST_CASE("norms closed forms for the unit shear") {
  TorusGrid g = make_grid(64);
  VectorField u(g);
  for (int r = 0; r < 64; ++r)
    for (int c = 0; c < 64; ++c) u.u1[r * 64 + c] = std::sin(g.x2(r));
  Norms nm = norms(u);
  CHECK(rel_err(nm.energy, std::numbers::pi * std::numbers::pi) < 1e-13);
  CHECK(rel_err(nm.h1_seminorm * nm.h1_seminorm, 2 * std::numbers::pi * std::numbers::pi) < 1e-13);

  ScalarField z(g);
  Norms zn = norms(z);
  CHECK(zn.l1 == 0.0);
  CHECK(zn.l2 == 0.0);
  CHECK(zn.h1_seminorm == 0.0);
}

TEST_CASE("grad-velocity norm equals vorticity norm on random divergence-free fields") {
  TorusGrid g = make_grid(96);
  for (unsigned seed = 0; seed < 10; ++seed) {
    ScalarField w = random_smooth_vorticity(g, 100 + seed);
    VectorField u = biot_savart(w);
    double grad_u = norms(u).h1_seminorm;
    double w_l2 = norms(w).l2;
    CHECK(rel_err(grad_u, w_l2) < 1e-12);
  }
}

TEST_CASE("mollify preserves constants and contracts norms") {
  TorusGrid g = make_grid(64);
  ScalarField c(g);
  for (auto& v : c.values) v = 3.25;
  ScalarField cm = mollify(c, 0.5);
  for (double v : cm.values) CHECK(std::fabs(v - 3.25) < 1e-8 * 3.25);

  ScalarField f = random_smooth_vorticity(g, 11);
  for (double alpha : {0.3, 0.7}) {
    ScalarField fm = mollify(f, alpha);
    CHECK(norms(fm).l2 <= norms(f).l2 * (1 + 1e-8));
    CHECK(norms(fm).l1 <= norms(f).l1 * (1 + 1e-8));
  }

  CHECK_THROWS_WITH_AS(mollify(f, 0.5 * g.spacing()),
                       doctest::Contains("under-resolved"), std::invalid_argument);
}

TEST_CASE("mollification error scales like alpha * grad norm") {
  TorusGrid g = make_grid(512);  // alpha = 0.025 needs spacing < 0.0125
  ScalarField f = random_smooth_vorticity(g, 5, -3.5, 12);
  double grad = norms(f).h1_seminorm;
  double prev_ratio = -1.0;
  for (double alpha : {0.1, 0.05, 0.025}) {
    ScalarField fm = mollify(f, alpha);
    double diff = norms(fm - f).l2;
    double ratio = diff / (alpha * grad);
    CHECK(ratio > 0.0);
    CHECK(ratio < 3.0);  // fitted C is O(1); radial kernels give O(alpha^2), smaller still
    if (prev_ratio > 0) CHECK(ratio < prev_ratio * 2.0);  // no blow-up as alpha halves
    prev_ratio = ratio;
  }
}

TEST_CASE("ball_convolve of the constant field gives the disk area") {
  TorusGrid g = make_grid(128);
  ScalarField one(g);
  for (auto& v : one.values) v = 1.0;
  double r = 0.5;
  ScalarField conv = ball_convolve(one, r);
  double area = std::numbers::pi * r * r;
  double tol = 2.0 * g.spacing() / r;
  for (double v : conv.values) CHECK(rel_err(v, area) < tol);

  ScalarField z(g);
  ScalarField zc = ball_convolve(z, r);
  CHECK(zc.max_abs() < 1e-15);

  CHECK_THROWS(ball_convolve(one, 3.5));
  CHECK_THROWS(ball_convolve(one, 0.1 * g.spacing()));
}

TEST_CASE("ball_convolve captures the mass of a narrow bump") {
  TorusGrid g = make_grid(256);
  // Mollified unit-mass bump at the domain center, width << r/4.
  double w = 0.05, r = 0.3;
  ScalarField f(g);
  double sum = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    double y2 = g.min_image(g.x2(row) - std::numbers::pi);
    for (int col = 0; col < g.n(); ++col) {
      double y1 = g.min_image(g.x1(col) - std::numbers::pi);
      double v = Mollifier::profile(std::sqrt(y1 * y1 + y2 * y2) / w);
      f.at(row, col) = v;
      sum += v;
    }
  }
  f *= 1.0 / (sum * g.cell_area());
  double got = ball_integral_at(f, std::numbers::pi, std::numbers::pi, r);
  CHECK(got >= 0.99);
  CHECK(got <= 1.0 + 1e-10);
}

TEST_CASE("ball_convolve total integral obeys Fubini") {
  TorusGrid g = make_grid(128);
  ScalarField f = random_smooth_vorticity(g, 21);
  for (auto& v : f.values) v += 0.5;  // non-mean-zero content
  double r = 0.4;
  ScalarField conv = ball_convolve(f, r);
  double lhs = 0.0, ftot = 0.0;
  for (double v : conv.values) lhs += v;
  for (double v : f.values) ftot += v;
  lhs *= g.cell_area();
  double rhs = std::numbers::pi * r * r * ftot * g.cell_area();
  CHECK(std::fabs(lhs - rhs) <= 2.0 * g.spacing() / r * std::fabs(rhs));
}

TEST_CASE("dealias truncation rule") {
  TorusGrid g = make_grid(128);
  SpectralField fh(g);
  fh.at(0, 1) = 1.0;  // mode (1,0)
  dealias(fh);
  CHECK(std::abs(fh.at(0, 1)) == 1.0);

  SpectralField gh(g);
  gh.at(0, 60) = 1.0;  // mode (60,0), 60 > 128/3
  dealias(gh);
  CHECK(std::abs(gh.at(0, 60)) == 0.0);
}

TEST_CASE("dealias survivor count on white noise") {
  TorusGrid g = make_grid(96);
  SpectralField fh(g);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.5, 1.0);
  for (auto& z : fh.coeffs) z = std::complex<double>(d(rng), d(rng));
  dealias(fh);
  // Count full-spectrum survivors: weight interior columns twice.
  long count = 0;
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.spectral_cols(); ++c)
      if (std::abs(fh.at(r, c)) > 0.0) count += (c == 0 || c == g.n() / 2) ? 1 : 2;
  long expected = (2 * 32 + 1) * (2 * 32 + 1);  // modes with max(|k1|,|k2|) <= 32
  CHECK(count == expected);
}
