#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "capwave/crapper.hpp"
#include "capwave/spectral.hpp"
#include "oracles.hpp"

using namespace capwave;
using std::cos;
using std::sin;

namespace {

PeriodicFunction fn(double (*f)(double), int n, Parity p = Parity::none) {
  return PeriodicFunction::sample([f](double t) { return f(t); }, n, p);
}

double max_diff(const PeriodicFunction& f, const std::function<double(double)>& g) {
  double e = 0.0;
  for (int j = 0; j < f.n_grid(); ++j) e = std::max(e, std::abs(f[j] - g(f.grid_point(j))));
  return e;
}

// Random band-limited function with `modes` cosine and sine modes and zero mean.
PeriodicFunction random_band_limited(std::mt19937& rng, int modes, int n, Parity p = Parity::none) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(modes), b(modes);
  for (int k = 0; k < modes; ++k) {
    a[k] = p == Parity::odd ? 0.0 : u(rng) / (1 + k);
    b[k] = p == Parity::even ? 0.0 : u(rng) / (1 + k);
  }
  return PeriodicFunction::sample(
      [&](double t) {
        double s = 0.0;
        for (int k = 0; k < modes; ++k) s += a[k] * std::cos((k + 1) * t) + b[k] * std::sin((k + 1) * t);
        return s;
      },
      n, p);
}

}  // namespace

TEST_CASE("mean of simple functions") {
  CHECK(std::abs(mean(fn([](double t) { return cos(t); }, 64))) < 1e-15);
  CHECK(mean(PeriodicFunction::constant(1.0, 32)) == doctest::Approx(1.0));
  CHECK(std::abs(mean(crapper_wave(CrapperParam(0.5), 256))) < 1e-13);
}

TEST_CASE("round trip samples to coefficients and back") {
  std::mt19937 rng(11);
  for (int n = 64; n <= 1024; n *= 2) {
    auto f = random_band_limited(rng, n / 4, n);
    auto back = PeriodicFunction::from_half_spectrum(std::vector<std::complex<double>>(
        f.half_spectrum().begin(), f.half_spectrum().end()));
    double e = 0.0;
    for (int j = 0; j < n; ++j) e = std::max(e, std::abs(back[j] - f[j]));
    CHECK(e < 1e-13 * (1.0 + f.max_abs()));
  }
}

TEST_CASE("spectrum agrees with a naive DFT") {
  std::mt19937 rng(3);
  auto f = random_band_limited(rng, 20, 128);
  std::vector<double> s(f.samples().begin(), f.samples().end());
  const auto c = oracle::naive_dft(s);
  for (int m = 0; m <= 64; ++m) CHECK(std::abs(c[m] - f.coeff(m)) < 1e-14);
}

TEST_CASE("derivative") {
  auto d = derivative(fn([](double t) { return cos(t); }, 64, Parity::even));
  CHECK(max_diff(d, [](double t) { return -sin(t); }) < 1e-13);
  CHECK(d.parity() == Parity::odd);
  CHECK(d.zero_mean());

  auto w = crapper_wave(CrapperParam(0.5), 256);
  CHECK(std::abs(derivative(w)[0]) < 1e-13);

  const double A = 0.3;
  auto two = fn([](double) { return 0.0; }, 64) +
             PeriodicFunction::sample([A](double t) { return -4 * A * cos(t) + 4 * A * A * cos(2 * t); }, 64);
  CHECK(max_diff(derivative(two), [A](double t) { return 4 * A * sin(t) - 8 * A * A * sin(2 * t); }) < 1e-13);
}

TEST_CASE("hilbert transform sign convention and examples") {
  auto h = hilbert(fn([](double t) { return cos(t); }, 64, Parity::even));
  CHECK(max_diff(h, [](double t) { return sin(t); }) < 1e-15);
  CHECK(h.parity() == Parity::odd);

  auto cw = hilbert(crapper_wave(CrapperParam(0.5), 256));
  CHECK(cw(std::numbers::pi / 2) == doctest::Approx(-1.6).epsilon(1e-13));

  auto s3 = fn([](double t) { return sin(3 * t); }, 64, Parity::odd);
  auto twice = hilbert(hilbert(s3));
  CHECK(max_diff(twice, [](double t) { return -sin(3 * t); }) < 1e-13);
}

TEST_CASE("hilbert rejects a nonzero mean") {
  CHECK_THROWS_AS(hilbert(PeriodicFunction::constant(1.0, 32)), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_strip(PeriodicFunction::constant(0.5, 32), StripDepth(1.0)), std::invalid_argument);
}

TEST_CASE("hilbert is skew and squares to minus identity") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_band_limited(rng, 30, 256);
    auto g = random_band_limited(rng, 30, 256);
    CHECK(std::abs(mean_product(hilbert(f), g) + mean_product(f, hilbert(g))) < 1e-12);
    CHECK((hilbert(hilbert(f)) + f).max_abs() < 1e-13);
  }
}

TEST_CASE("parity flips under hilbert and hilbert_strip") {
  std::mt19937 rng(8);
  auto e = random_band_limited(rng, 10, 64, Parity::even);
  auto o = random_band_limited(rng, 10, 64, Parity::odd);
  CHECK(hilbert(e).parity() == Parity::odd);
  CHECK(hilbert(o).parity() == Parity::even);
  CHECK(hilbert_strip(e, StripDepth(1.0)).parity() == Parity::odd);
  CHECK(hilbert_strip(o, StripDepth(1.0)).parity() == Parity::even);
  // The symmetric parts are actually symmetric.
  auto he = hilbert(e);
  for (int j = 1; j < 64; ++j) CHECK(std::abs(he[j] + he[64 - j]) < 1e-14);
}

TEST_CASE("strip hilbert multiplier") {
  auto h = hilbert_strip(fn([](double t) { return cos(t); }, 64, Parity::even), StripDepth(1.0));
  const double coth1 = 1.0 + 2.0 / (std::exp(2.0) - 1.0);
  CHECK(coth1 == doctest::Approx(1.3130352855).epsilon(1e-9));
  CHECK(max_diff(h, [=](double t) { return coth1 * sin(t); }) < 1e-14);

  auto h2 = hilbert_strip(fn([](double t) { return sin(2 * t); }, 64, Parity::odd), StripDepth(1.0));
  CHECK(max_diff(h2, [](double t) { return -std::cosh(2.0) / std::sinh(2.0) * cos(2 * t); }) < 1e-14);

  for (int m = 1; m < 50; ++m) {
    CHECK(strip_multiplier(m, 0.3) >= 1.0);
    CHECK(strip_multiplier(m, 0.6) <= strip_multiplier(m, 0.3));
  }
  CHECK_THROWS_AS(StripDepth(0.0), std::invalid_argument);
  CHECK_THROWS_AS(StripDepth(-1.0), std::invalid_argument);
}

TEST_CASE("strip transform approaches the deep transform") {
  const auto w = crapper_wave(CrapperParam(0.5), 256);
  double prev = 0.0;
  for (int d = 1; d <= 4; ++d) {
    const double diff = (hilbert_strip(w, StripDepth(d)) - hilbert(w)).max_abs();
    // ||C_d f - C f|| <= sup_m lambda_m * sum_m |f_m| over both signs of m.
    CHECK(diff <= kappa_tail_bound(StripDepth(d), 0) * w.coefficient_l1() * (1 + 1e-12));
    if (d > 1) CHECK(diff <= 0.2 * prev);
    prev = diff;
  }
}

TEST_CASE("kappa tail bound") {
  CHECK(kappa_tail_bound(StripDepth(1.0), 0) == doctest::Approx(2.0 / (std::exp(2.0) - 1.0)).epsilon(1e-14));
  CHECK(kappa_tail_bound(StripDepth(1.0), 0) == doctest::Approx(0.31304).epsilon(1e-4));
  CHECK(kappa_tail_bound(StripDepth(0.5), 0) == doctest::Approx(2.0 / (std::exp(1.0) - 1.0)).epsilon(1e-14));
  CHECK(kappa_tail_bound(StripDepth(0.5), 0) == doctest::Approx(1.1639).epsilon(1e-4));
  CHECK(kappa_tail_bound(StripDepth(20.0), 0) < 1e-15);
  // p = 2 peaks away from m = 1 for small d.
  double best = 0.0;
  for (int m = 1; m < 400; ++m) best = std::max(best, std::pow(m, 3) * strip_multiplier_gap(m, 0.05));
  CHECK(kappa_tail_bound(StripDepth(0.05), 2) == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("pointwise algebra") {
  auto c = fn([](double t) { return cos(t); }, 32, Parity::even);
  auto sq = c * c;
  CHECK(max_diff(sq, [](double t) { return 0.5 * (1 + cos(2 * t)); }) < 1e-15);
  CHECK(sq.parity() == Parity::even);

  auto one = pow(1.0 + 0.0 * c, -0.5);
  CHECK(max_diff(one, [](double) { return 1.0; }) < 1e-15);

  auto theta = crapper_theta(CrapperParam(0.5), 256);
  CHECK(exp(hilbert(theta))[0] == doctest::Approx(1.0 / 9.0).epsilon(1e-12));

  CHECK_THROWS_AS(c / c, DegenerateMetric);
  CHECK_THROWS_AS(log(c), DegenerateMetric);
  CHECK_THROWS_AS(pow(c, 0.5), DegenerateMetric);
}

TEST_CASE("products are de-aliased") {
  // cos(15 t)^2 on a 32-point grid: mode 30 must be discarded, not folded
  // onto mode 2.
  auto c = fn([](double t) { return std::cos(15 * t); }, 32, Parity::even);
  auto sq = c * c;
  CHECK(std::abs(sq.cosine_coeff(0) - 0.5) < 1e-15);
  for (int k = 1; k <= 16; ++k) CHECK(std::abs(sq.cosine_coeff(k)) < 1e-14);

  // Random product against the exact convolution of band-limited inputs.
  std::mt19937 rng(21);
  auto f = random_band_limited(rng, 10, 64), g = random_band_limited(rng, 10, 64);
  auto fg = f * g;
  std::vector<double> exact(64);
  for (int j = 0; j < 64; ++j) exact[j] = f[j] * g[j];  // modes <= 20 < 32: no aliasing
  for (int j = 0; j < 64; ++j) CHECK(std::abs(fg[j] - exact[j]) < 1e-14);
}

TEST_CASE("resampling is exact for band-limited data") {
  std::mt19937 rng(2);
  auto f = random_band_limited(rng, 12, 64);
  auto up = f.resampled(256);
  for (int j = 0; j < 256; ++j) CHECK(std::abs(up[j] - f(up.grid_point(j))) < 1e-13);
  auto down = up.resampled(64);
  CHECK((down - f).max_abs() < 1e-14);
}
