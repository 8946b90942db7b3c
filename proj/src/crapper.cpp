#include "capwave/crapper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace capwave {

CrapperParam::CrapperParam(double A) : A_(A) {
  if (!(std::abs(A) < 1.0))
    throw std::invalid_argument("CrapperParam: |A| must be < 1, got " + std::to_string(A));
}

double beta_of(CrapperParam A) {
  const double a2 = A.value() * A.value();
  return (1.0 + a2) / (1.0 - a2);
}

double q_of(CrapperParam A) {
  const double a2 = A.value() * A.value();
  return (1.0 - a2) / (1.0 + a2);
}

double crapper_param_from_beta(double beta) {
  if (!(beta >= 1.0)) throw std::invalid_argument("crapper_param_from_beta: beta must be >= 1");
  return std::sqrt((beta - 1.0) / (beta + 1.0));
}

namespace {

double plus_modulus(double A, double t) { return 1.0 + A * A + 2.0 * A * std::cos(t); }   // |1 + A e^{it}|^2
double minus_modulus(double A, double t) { return 1.0 + A * A - 2.0 * A * std::cos(t); }  // |1 - A e^{it}|^2

}  // namespace

double crapper_wave_at(double A, double t) { return 2.0 * (1.0 - A * A) / plus_modulus(A, t) - 2.0; }

double crapper_hilbert_at(double A, double t) { return -4.0 * A * std::sin(t) / plus_modulus(A, t); }

double crapper_derivative_at(double A, double t) {
  const double den = plus_modulus(A, t);
  return 4.0 * A * (1.0 - A * A) * std::sin(t) / (den * den);
}

double crapper_hilbert_derivative_at(double A, double t) {
  const double den = plus_modulus(A, t);
  return -4.0 * A * ((1.0 + A * A) * std::cos(t) + 2.0 * A) / (den * den);
}

double crapper_exp_hilbert_theta_at(double A, double t) { return minus_modulus(A, t) / plus_modulus(A, t); }

PeriodicFunction crapper_wave(CrapperParam A, int n_grid) {
  // Built from the exact coefficients 4(-A)^n, |n| < n_grid/2: sampling the
  // closed form would leave O(eps) noise in every mode, which w'' amplifies.
  if (n_grid < 4 || n_grid % 2) throw std::invalid_argument("crapper_wave: n_grid must be even and >= 4");
  std::vector<double> a(static_cast<size_t>(n_grid / 2 - 1));
  double p = 1.0;
  for (auto& c : a) {
    p *= -A.value();
    c = 4.0 * p;
  }
  return PeriodicFunction::from_cosine_modes(a, n_grid);
}

PeriodicFunction crapper_theta(CrapperParam A, int n_grid) {
  const double a = A.value();
  auto theta = PeriodicFunction::sample(
      [a](double t) {
        return std::atan2(crapper_derivative_at(a, t), 1.0 + crapper_hilbert_derivative_at(a, t));
      },
      n_grid, Parity::odd);
  auto s = theta.samples();
  for (size_t j = 0; j < s.size(); ++j) {
    const double next = s[(j + 1) % s.size()];
    if (std::abs(next - s[j]) > std::numbers::pi)
      throw std::domain_error("crapper_theta: branch jump in tangent angle at A = " + std::to_string(a));
  }
  return theta.with_parity(Parity::odd);
}

double verify_identity(CrapperParam A, int n_grid) {
  const double a = A.value();
  double worst = 0.0;
  for (int j = 0; j < n_grid; ++j) {
    const double t = 2.0 * std::numbers::pi * j / n_grid;
    const double p = plus_modulus(a, t);
    const double m = minus_modulus(a, t);
    const double lhs = m / p + 8.0 * a * (1.0 + a * a) * std::cos(t) / (p * m);
    const double rhs = p / m;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

int recommended_grid(double A, double tol) {
  const double a = std::abs(A);
  if (a < 1e-3) return 64;
  const int n = static_cast<int>(std::ceil(10.0 * std::log(tol) / std::log(a)));
  int grid = 64;
  while (grid < n) grid *= 2;
  return grid;
}

}  // namespace capwave
