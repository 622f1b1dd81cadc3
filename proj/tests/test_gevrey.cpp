#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "sqg/errors.hpp"
#include "sqg/gevrey.hpp"
#include "sqg/spectral.hpp"

using namespace sqg;

namespace {

SpectralField cos_x1(const Grid& g) {
  return forward_transform(sample(g, [](double x, double) { return std::cos(x); }));
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.grid().size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("gevrey parameter validation") {
  GevreyParams gp;
  CHECK_NOTHROW(validate(gp));
  gp.alpha = 0.9;
  CHECK_THROWS_AS(validate(gp), ConfigError);
  gp = {};
  gp.kappa = 1.0;
  gp.alpha = 0.5;
  CHECK_NOTHROW(validate(gp));
  gp.beta = 0.5;
  CHECK_THROWS_AS(validate(gp), ConfigError);
  gp = {};
  gp.lambda = 0.0;
  CHECK_THROWS_AS(validate(gp), ConfigError);
}

TEST_CASE("gevrey multiplier") {
  const Grid g(32);
  const SpectralField c = cos_x1(g);
  CHECK(max_diff(gevrey_multiply(c, 0.0, 0.5), c) == 0.0);
  const SpectralField e = gevrey_multiply(c, 1.0, 0.5);
  CHECK(std::abs(e.at_frequency(1, 0) - 0.5 * std::exp(1.0)) < 1e-15);

  const SpectralField f = forward_transform(oracle::random_real(g, 1));
  const SpectralField back = gevrey_multiply(gevrey_multiply(f, 0.2, 0.5), -0.2, 0.5);
  CHECK(max_diff(back, f) < 1e-12 * f.max_abs());

  const double gmax = max_admissible_gamma(f, 0.5);
  CHECK(gmax == doctest::Approx(700.0 / std::pow(std::hypot(16.0, 16.0), 0.5)));
  try {
    gevrey_multiply(f, 2.0 * gmax, 0.5);
    FAIL("expected GevreyOverflow");
  } catch (const GevreyOverflow& ex) {
    CHECK(ex.max_admissible_gamma() == doctest::Approx(gmax));
  }
  CHECK_NOTHROW(gevrey_multiply(f, -2.0 * gmax, 0.5));
}

TEST_CASE("fractional laplacian") {
  const Grid g(64);
  const SpectralField c = cos_x1(g);
  CHECK(max_diff(fractional_laplacian(c, 0.37), c) < 1e-16);
  const SpectralField f = forward_transform(oracle::random_real(g, 2));
  CHECK(max_diff(fractional_laplacian(f, 0.0), f) == 0.0);

  const SpectralField roundtrip = fractional_laplacian(fractional_laplacian(f, 0.6), -0.6);
  std::vector<Complex> no_mean(f.coeffs().begin(), f.coeffs().end());
  no_mean[0] = 0.0;
  CHECK(max_diff(roundtrip, SpectralField(g, no_mean)) < 1e-12 * f.max_abs());
}

TEST_CASE("Lambda^2 is minus the laplacian up to finite-difference error") {
  for (int n : {32, 64}) {
    const Grid g(n);
    auto fn = [](double x, double y) { return std::exp(std::sin(x) + 0.5 * std::cos(y)); };
    const RealField f = sample(g, fn);
    const RealField lap = inverse_transform(fractional_laplacian(forward_transform(f), 2.0));
    const double h = g.spacing();
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double fd = -(f.at((i + 1) % n, j) + f.at((i + n - 1) % n, j) + f.at(i, (j + 1) % n) +
                            f.at(i, (j + n - 1) % n) - 4 * f.at(i, j)) /
                          (h * h);
        err = std::max(err, std::abs(fd - lap.at(i, j)));
        scale = std::max(scale, std::abs(f.at(i, j)));
      }
    CHECK(err < 2.0 * h * h * scale * 4.0);
  }
}

TEST_CASE("heat semigroup") {
  const Grid g(32);
  const SpectralField c = cos_x1(g);
  CHECK(max_diff(heat_semigroup(c, 0.0, 0.8), c) == 0.0);
  CHECK(std::abs(heat_semigroup(c, 1.0, 0.5).at_frequency(1, 0) - 0.5 * std::exp(-1.0)) < 1e-16);
  const SpectralField f = forward_transform(oracle::random_real(g, 3));
  const SpectralField two = heat_semigroup(heat_semigroup(f, 0.03, 0.8), 0.05, 0.8);
  CHECK(max_diff(two, heat_semigroup(f, 0.08, 0.8)) < 1e-13 * f.max_abs());
  CHECK_THROWS_AS(heat_semigroup(f, -0.1, 0.8), DomainError);
  CHECK_THROWS_AS(heat_semigroup(f, 0.1, 0.0), DomainError);
}

TEST_CASE("riesz velocity of sin(x1)") {
  const Grid g(16);
  const SpectralField s = forward_transform(sample(g, [](double x, double) { return std::sin(x); }));
  const auto [u1, u2] = riesz_velocity(s);
  const RealField v1 = inverse_transform(u1), v2 = inverse_transform(u2);
  const RealField ref = sample(g, [](double x, double) { return -std::cos(x); });
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(v1[i]) < 1e-15);
    CHECK(v2[i] == doctest::Approx(ref[i]).epsilon(1e-14));
  }
}

TEST_CASE("riesz velocity is divergence free and L2 contracting") {
  const Grid g(32, 3.0);
  const SpectralField th = forward_transform(oracle::random_real(g, 4));
  const auto [u1, u2] = riesz_velocity(th);
  double umax = 0.0, div = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector k = g.wavevector(i);
    div = std::max(div, std::abs(k.x * u1[i] + k.y * u2[i]));
    umax = std::max({umax, std::abs(u1[i]), std::abs(u2[i])});
  }
  CHECK(div <= 1e-13 * umax);
  for (int axis : {0, 1})
    CHECK(parseval_l2_norm(riesz_transform(th, axis)) <= parseval_l2_norm(th));
}

TEST_CASE("analyticity radius estimates") {
  const Grid g(128);
  const double alpha = 0.5;
  SpectralField exact = apply_multiplier(oracle::random_spectrum(g, 1), [&](const Wavevector& k) {
    return k.norm() == 0.0 ? 0.0 : 1.0;
  });
  // Unit-modulus coefficients times exp(-2 |k|^alpha).
  std::vector<Complex> c(exact.coeffs().begin(), exact.coeffs().end());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(c[i]) > 0.0) c[i] = c[i] / std::abs(c[i]) * std::exp(-2.0 * std::pow(g.wavenumber_norm(i), alpha));
  const RadiusEstimate r = analyticity_radius_estimate(SpectralField(g, c), alpha);
  CHECK(r.gamma == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(!r.low_signal);

  std::vector<Complex> w(c.size());
  for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::abs(c[i]) > 0.0 ? c[i] / std::abs(c[i]) : 0.0;
  const SpectralField white(g, w);
  CHECK(analyticity_radius_estimate(white, alpha).gamma == doctest::Approx(0.0).epsilon(1e-9));

  for (double t : {0.05, 0.2}) {
    const double kappa = 0.8;
    const RadiusEstimate h = analyticity_radius_estimate(heat_semigroup(white, t, kappa), kappa);
    CHECK(h.gamma == doctest::Approx(t).epsilon(0.02));
  }
  const RadiusEstimate z = analyticity_radius_estimate(SpectralField(g), alpha);
  CHECK(z.low_signal);
  CHECK(z.gamma == 0.0);
}

TEST_CASE("X_T norm") {
  const DyadicSystem sys{Grid(64)};
  const SpectralField f = forward_transform(oracle::random_real(sys.grid(), 5));
  GevreyParams gp;
  gp.beta = 0.0;
  gp.lambda = 1.0;
  const BesovParams bp{0.5, 2.0, 2.0};
  // lambda -> 0 limit: weight 1 and no Gevrey factor.
  GevreyParams plain = gp;
  plain.lambda = 1e-300;
  const XTNormResult one = xt_norm({{0.3, f}}, sys, plain, bp);
  CHECK(one.sup == doctest::Approx(besov_norm(sys, f, bp)).epsilon(1e-13));
  CHECK_THROWS_AS(xt_norm({}, sys, gp, bp), DomainError);
  CHECK_THROWS_AS(xt_norm({{0.0, f}}, sys, gp, bp), DomainError);

  // Heat flow of band-limited data: finite, attained sup, interior max when beta > 0.
  gp.beta = 0.3;
  std::vector<TimeSample> traj;
  const SpectralField band = random_band_limited(sys.grid(), 3, 2);
  for (int i = 1; i <= 40; ++i) {
    const double t = 0.05 * i;
    traj.push_back({t, heat_semigroup(band, t, gp.kappa)});
  }
  const XTNormResult xt = xt_norm(traj, sys, gp, {0.2, 2.0, 2.0});
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < xt.samples.size(); ++i)
    if (xt.samples[i].weighted_norm > best) best = xt.samples[i].weighted_norm, arg = i;
  CHECK(std::isfinite(xt.sup));
  CHECK(xt.sup == best);
  CHECK(arg > 0);
  CHECK(arg + 1 < xt.samples.size());
  CHECK(xt.samples[3].gamma_t == doctest::Approx(std::pow(0.2, gp.alpha / gp.kappa)));
  std::ostringstream csv;
  write_xt_csv(csv, xt);
  CHECK(csv.str().rfind("t,gamma_t,besov_norm,weighted_norm,radius_estimate\n", 0) == 0);
}

TEST_CASE("X_T overflow carries the sample time") {
  const DyadicSystem sys{Grid(64)};
  const SpectralField f = forward_transform(oracle::random_real(sys.grid(), 6));
  GevreyParams gp;
  gp.lambda = 1e3;
  try {
    xt_norm({{0.01, f}, {5.0, f}}, sys, gp, {0.0, 2.0, 2.0});
    FAIL("expected overflow");
  } catch (const GevreyOverflow& e) {
    CHECK(e.time() >= 0.01);
  }
}
