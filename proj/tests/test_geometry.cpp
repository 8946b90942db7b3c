#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "capwave/crapper.hpp"
#include "capwave/geometry.hpp"
#include "capwave/operators.hpp"
#include "oracles.hpp"

using namespace capwave;
constexpr double kPi = std::numbers::pi;

namespace {

InjectivityReport crapper_report(double A, int n) {
  return check_injective(surface_profile(crapper_wave(CrapperParam(A), n), 1.0, Conjugation::deep()));
}

// Crossings per period from the brute-force count. The window ends cut lobes
// in a way that repeats with period two, so compare windows two periods apart.
long oracle_crossings_per_period(double A, int n) {
  return (oracle::brute_force_crossings(oracle::crapper_polyline(A, n, 5)) -
          oracle::brute_force_crossings(oracle::crapper_polyline(A, n, 3))) /
         2;
}

bool oracle_injective(double A, int n) { return oracle::brute_force_crossings(oracle::crapper_polyline(A, n, 3)) == 0; }

}  // namespace

TEST_CASE("surface profile") {
  auto flat = surface_profile(PeriodicFunction::zero(64), 1.0, Conjugation::deep());
  REQUIRE(flat.points.size() == 64);
  for (int j = 0; j < 64; ++j) {
    CHECK(flat.points[j].Y == 0.0);
    CHECK(flat.points[j].X == doctest::Approx(2 * kPi * j / 64).epsilon(1e-15));
  }

  auto c = surface_profile(crapper_wave(CrapperParam(0.5), 256), 1.0, Conjugation::deep());
  CHECK(c.points[0].Y == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(c.points[128].Y == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(c.period() == doctest::Approx(2 * kPi));
  for (long j : {-300L, -1L, 0L, 17L, 255L})
    CHECK(c.at(j + 256).X - c.at(j).X == doctest::Approx(2 * kPi).epsilon(1e-14));

  auto c3 = surface_profile(crapper_wave(CrapperParam(0.5), 256), 3.0, Conjugation::deep());
  CHECK(c3.period() == doctest::Approx(2 * kPi / 3));
  CHECK(c3.at(256).X - c3.at(0).X == doctest::Approx(2 * kPi / 3).epsilon(1e-14));
  CHECK(c3.points[10].Y == doctest::Approx(c.points[10].Y / 3).epsilon(1e-15));

  auto fold = PeriodicFunction::sample([](double t) { return std::cos(t); }, 64, Parity::even);
  CHECK_THROWS_AS(surface_profile(fold, 1.0, Conjugation::deep()), DegenerateMetric);
}

TEST_CASE("metric is the squared speed of the parameterisation") {
  for (double k : {1.0, 2.5}) {
    const int n = 512;
    auto w = crapper_wave(CrapperParam(0.6), n);
    auto curve = surface_profile(w, k, Conjugation::deep());
    std::vector<double> x(n), y(n);
    for (int j = 0; j < n; ++j) {
      x[j] = k * curve.points[j].X - w.grid_point(j);  // periodic part
      y[j] = k * curve.points[j].Y;
    }
    auto dx = 1.0 + derivative(PeriodicFunction::from_samples(x));
    auto dy = derivative(PeriodicFunction::from_samples(y));
    auto W = conformal_metric(w, Conjugation::deep());
    for (int j = 0; j < n; ++j) CHECK(std::abs(dx[j] * dx[j] + dy[j] * dy[j] - W[j]) < 1e-10);
  }
}

TEST_CASE("injectivity of Crapper profiles against a brute-force oracle") {
  CHECK(check_injective(surface_profile(PeriodicFunction::zero(128), 1.0, Conjugation::deep())).injective);
  CHECK(crapper_report(0.2, 1024).injective);
  CHECK(oracle_injective(0.2, 1024));

  auto r9 = crapper_report(0.9, 1024);
  CHECK_FALSE(r9.injective);
  CHECK_FALSE(oracle_injective(0.9, 512));

  for (double A : {0.1, 0.3, 0.44, 0.47, 0.6, 0.8, -0.6, -0.8}) {
    const int n = 512;
    auto rep = crapper_report(A, n);
    CHECK(rep.injective == oracle_injective(A, n));
    CHECK(long(rep.crossings.size()) == oracle_crossings_per_period(A, n));
  }
  // Neighbouring lobes overlap at A = 0.8.
  CHECK(crapper_report(0.8, 1024).crossings.size() == 4);
  CHECK_THROWS_AS(check_injective(surface_profile(PeriodicFunction::zero(32), 1.0, Conjugation::deep())),
                  std::invalid_argument);
}

TEST_CASE("injectivity is symmetric under A -> -A") {
  for (double A : {0.3, 0.6, 0.85}) {
    auto p = crapper_report(A, 1024), m = crapper_report(-A, 1024);
    CHECK(p.injective == m.injective);
    CHECK(p.crossings.size() == m.crossings.size());
  }
}

TEST_CASE("above the bed") {
  CHECK(check_above_bed(PeriodicFunction::zero(64), 2.0, 0.1));
  auto w = crapper_wave(CrapperParam(0.5), 256);
  CHECK_FALSE(check_above_bed(w, 1.0, 1.0));
  CHECK(check_above_bed(w, 1.0, 2.0));
  CHECK(check_above_bed(w, 2.0, 1.0));  // Y = w/k
  CHECK(check_above_bed(w, 1.0, std::numeric_limits<double>::infinity()));
}

TEST_CASE("steepness") {
  CHECK(steepness(PeriodicFunction::zero(64)) == 0.0);
  CHECK(steepness(crapper_wave(CrapperParam(0.3), 512)) == doctest::Approx(0.41975).epsilon(1e-4));
  for (int i = 1; i <= 8; ++i) {
    const double A = 0.1 * i;
    const double exact = 4 * A / (kPi * (1 - A * A));
    CHECK(std::abs(steepness(crapper_wave(CrapperParam(A), 1024)) - exact) < 1e-10);
    CHECK(std::abs(steepness(crapper_wave(CrapperParam(-A), 1024)) - exact) < 1e-10);
  }
  auto w = crapper_wave(CrapperParam(0.4), 256);
  CHECK(steepness(w, 1.0) == steepness(w, 7.0));
}

TEST_CASE("critical self-intersection parameter") {
  // Computed value, frozen here; it corresponds to a steepness of about 0.730.
  const double golden = 0.454671;
  const double a2048 = critical_self_intersection_A(1e-6, 2048);
  const double a1024 = critical_self_intersection_A(1e-6, 1024);
  CHECK(std::abs(a2048 - golden) < 2e-6);
  CHECK(std::abs(a2048 - a1024) < 1e-3);
  CHECK(crapper_report(a2048 - 0.05, 2048).injective);
  CHECK_FALSE(crapper_report(a2048 + 0.05, 2048).injective);
  CHECK(4 * a2048 / (kPi * (1 - a2048 * a2048)) == doctest::Approx(0.730).epsilon(1e-3));

  // Independent bisection with the brute-force oracle on closed-form points.
  double lo = 0.3, hi = 0.6;
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    (oracle_injective(mid, 512) ? lo : hi) = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - a2048) < 1e-3);
}
