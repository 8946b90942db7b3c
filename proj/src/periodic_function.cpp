#include "capwave/periodic_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "capwave/fft.hpp"

namespace capwave {

const char* to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::none: return "none";
  }
  return "none";
}

namespace {

void require_valid_grid(size_t n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("PeriodicFunction: grid size must be even and >= 4, got " +
                                std::to_string(n));
}

}  // namespace

PeriodicFunction PeriodicFunction::from_samples(std::vector<double> samples, Parity parity) {
  require_valid_grid(samples.size());
  PeriodicFunction f;
  f.coeffs_.resize(samples.size() / 2 + 1);
  fft::forward(samples, f.coeffs_);
  f.samples_ = std::move(samples);
  f.parity_ = parity;
  return f;
}

PeriodicFunction PeriodicFunction::from_half_spectrum(std::vector<std::complex<double>> coeffs,
                                                      Parity parity) {
  if (coeffs.size() < 3) throw std::invalid_argument("PeriodicFunction: spectrum too short");
  const size_t n = 2 * (coeffs.size() - 1);
  require_valid_grid(n);
  // Real data: mean and Nyquist coefficients are real.
  coeffs.front().imag(0.0);
  coeffs.back().imag(0.0);
  PeriodicFunction f;
  f.samples_.resize(n);
  fft::inverse(coeffs, f.samples_);
  f.coeffs_ = std::move(coeffs);
  f.parity_ = parity;
  return f;
}

PeriodicFunction PeriodicFunction::from_cosine_modes(std::span<const double> a, int n_grid) {
  require_valid_grid(static_cast<size_t>(n_grid));
  std::vector<std::complex<double>> c(static_cast<size_t>(n_grid / 2 + 1));
  for (size_t j = 0; j < a.size(); ++j) {
    const size_t m = j + 1;
    if (m >= c.size() - 1) {
      if (a[j] != 0.0) throw std::invalid_argument("from_cosine_modes: mode exceeds grid Nyquist");
      continue;
    }
    c[m] = 0.5 * a[j];
  }
  return from_half_spectrum(std::move(c), Parity::even);
}

PeriodicFunction PeriodicFunction::from_sine_modes(std::span<const double> b, int n_grid) {
  require_valid_grid(static_cast<size_t>(n_grid));
  std::vector<std::complex<double>> c(static_cast<size_t>(n_grid / 2 + 1));
  for (size_t j = 0; j < b.size(); ++j) {
    const size_t m = j + 1;
    if (m >= c.size() - 1) {
      if (b[j] != 0.0) throw std::invalid_argument("from_sine_modes: mode exceeds grid Nyquist");
      continue;
    }
    c[m] = std::complex<double>(0.0, -0.5 * b[j]);
  }
  return from_half_spectrum(std::move(c), Parity::odd);
}

PeriodicFunction PeriodicFunction::constant(double value, int n_grid) {
  require_valid_grid(static_cast<size_t>(n_grid));
  PeriodicFunction f;
  f.samples_.assign(static_cast<size_t>(n_grid), value);
  f.coeffs_.assign(static_cast<size_t>(n_grid / 2 + 1), {0.0, 0.0});
  f.coeffs_[0] = value;
  f.parity_ = Parity::even;
  return f;
}

PeriodicFunction PeriodicFunction::sample(const std::function<double(double)>& fn, int n_grid,
                                          Parity parity) {
  require_valid_grid(static_cast<size_t>(n_grid));
  std::vector<double> s(static_cast<size_t>(n_grid));
  for (int j = 0; j < n_grid; ++j) s[static_cast<size_t>(j)] = fn(2.0 * std::numbers::pi * j / n_grid);
  return from_samples(std::move(s), parity);
}

std::complex<double> PeriodicFunction::coeff(int m) const {
  const int half = n_grid() / 2;
  if (m > half || m < -half) throw std::out_of_range("PeriodicFunction::coeff: mode out of range");
  if (m >= 0) return coeffs_[static_cast<size_t>(m)];
  if (m == -half) return coeffs_[static_cast<size_t>(half)];
  return std::conj(coeffs_[static_cast<size_t>(-m)]);
}

std::vector<std::complex<double>> PeriodicFunction::full_spectrum() const {
  const int half = n_grid() / 2;
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<size_t>(n_grid()));
  for (int m = -half; m < half; ++m) out.push_back(coeff(m));
  return out;
}

double PeriodicFunction::cosine_coeff(int k) const {
  const int half = n_grid() / 2;
  if (k < 0 || k > half) return 0.0;
  if (k == 0 || k == half) return coeffs_[static_cast<size_t>(k)].real();
  return 2.0 * coeffs_[static_cast<size_t>(k)].real();
}

double PeriodicFunction::sine_coeff(int k) const {
  const int half = n_grid() / 2;
  if (k <= 0 || k >= half) return 0.0;
  return -2.0 * coeffs_[static_cast<size_t>(k)].imag();
}

std::vector<double> PeriodicFunction::cosine_modes(int count) const {
  std::vector<double> a(static_cast<size_t>(count));
  for (int k = 1; k <= count; ++k) a[static_cast<size_t>(k - 1)] = cosine_coeff(k);
  return a;
}

std::vector<double> PeriodicFunction::sine_modes(int count) const {
  std::vector<double> b(static_cast<size_t>(count));
  for (int k = 1; k <= count; ++k) b[static_cast<size_t>(k - 1)] = sine_coeff(k);
  return b;
}

bool PeriodicFunction::zero_mean() const {
  return std::abs(mean()) < kZeroMeanTolerance * (1.0 + max_abs());
}

double PeriodicFunction::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

double PeriodicFunction::min() const { return *std::min_element(samples_.begin(), samples_.end()); }
double PeriodicFunction::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

double PeriodicFunction::coefficient_l1() const {
  const size_t half = coeffs_.size() - 1;
  double s = std::abs(coeffs_[half]);
  for (size_t m = 1; m < half; ++m) s += 2.0 * std::abs(coeffs_[m]);
  return s;
}

double PeriodicFunction::operator()(double t) const {
  const size_t half = coeffs_.size() - 1;
  double v = coeffs_[0].real();
  for (size_t m = 1; m < half; ++m) {
    const double mt = static_cast<double>(m) * t;
    v += 2.0 * (coeffs_[m].real() * std::cos(mt) - coeffs_[m].imag() * std::sin(mt));
  }
  v += coeffs_[half].real() * std::cos(static_cast<double>(half) * t);
  return v;
}

PeriodicFunction PeriodicFunction::resampled(int n_new) const {
  require_valid_grid(static_cast<size_t>(n_new));
  if (n_new == n_grid()) return *this;
  const size_t half_old = coeffs_.size() - 1;
  const size_t half_new = static_cast<size_t>(n_new / 2);
  std::vector<std::complex<double>> c(half_new + 1);
  if (half_new > half_old) {
    for (size_t m = 0; m < half_old; ++m) c[m] = coeffs_[m];
    // Split the old Nyquist term cos(n t / 2) between +-n/2.
    c[half_old] = 0.5 * coeffs_[half_old];
  } else {
    for (size_t m = 0; m < half_new; ++m) c[m] = coeffs_[m];
  }
  return from_half_spectrum(std::move(c), parity_);
}

PeriodicFunction PeriodicFunction::truncated(int max_mode) const {
  std::vector<std::complex<double>> c = coeffs_;
  for (size_t m = 0; m < c.size(); ++m)
    if (static_cast<int>(m) > max_mode) c[m] = 0.0;
  return from_half_spectrum(std::move(c), parity_);
}

PeriodicFunction PeriodicFunction::without_mean() const {
  std::vector<std::complex<double>> c = coeffs_;
  c[0] = 0.0;
  return from_half_spectrum(std::move(c), parity_);
}

PeriodicFunction PeriodicFunction::with_parity(Parity p) const {
  std::vector<std::complex<double>> c = coeffs_;
  if (p == Parity::even) {
    for (auto& z : c) z.imag(0.0);
  } else if (p == Parity::odd) {
    for (auto& z : c) z.real(0.0);
    c.back() = 0.0;
  }
  return from_half_spectrum(std::move(c), p);
}

void require_same_grid(const PeriodicFunction& f, const PeriodicFunction& g) {
  if (f.n_grid() != g.n_grid())
    throw std::invalid_argument("grid mismatch: " + std::to_string(f.n_grid()) + " vs " +
                                std::to_string(g.n_grid()));
}

Parity product_parity(Parity a, Parity b) {
  if (a == Parity::none || b == Parity::none) return Parity::none;
  return a == b ? Parity::even : Parity::odd;
}

Parity sum_parity(Parity a, Parity b) { return a == b ? a : Parity::none; }

}  // namespace capwave
