#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace capwave {

enum class Parity { even, odd, none };

const char* to_string(Parity p);

// Thrown whenever a divisor, log argument or conformal metric gets closer to
// zero than `kDegenerateThreshold` on the (padded) grid.
class DegenerateMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDegenerateThreshold = 1e-12;
inline constexpr double kZeroMeanTolerance = 1e-13;

/// A real 2*pi-periodic function on the uniform grid t_j = 2*pi*j/n.
///
/// Grid samples and spectral coefficients are both held and always agree:
///   f(t_j) = sum_m c_m exp(i m t_j),  m = -n/2 .. n/2,
/// with c_{-m} = conj(c_m) and the Nyquist mode m = n/2 counted once.
/// Values are immutable once built.
class PeriodicFunction {
 public:
  PeriodicFunction() = default;

  static PeriodicFunction from_samples(std::vector<double> samples, Parity parity = Parity::none);
  // coeffs[m] for m = 0..n/2 (half spectrum of a real function).
  static PeriodicFunction from_half_spectrum(std::vector<std::complex<double>> coeffs,
                                             Parity parity = Parity::none);
  // a[j] multiplies cos((j+1) t); the result has zero mean and even parity.
  static PeriodicFunction from_cosine_modes(std::span<const double> a, int n_grid);
  // b[j] multiplies sin((j+1) t); the result has zero mean and odd parity.
  static PeriodicFunction from_sine_modes(std::span<const double> b, int n_grid);
  static PeriodicFunction constant(double value, int n_grid);
  static PeriodicFunction sample(const std::function<double(double)>& f, int n_grid,
                                 Parity parity = Parity::none);
  static PeriodicFunction zero(int n_grid) { return constant(0.0, n_grid); }

  int n_grid() const { return static_cast<int>(samples_.size()); }
  double grid_point(int j) const { return 2.0 * std::numbers::pi * j / n_grid(); }
  std::span<const double> samples() const { return samples_; }
  double operator[](int j) const { return samples_[static_cast<size_t>(j)]; }

  // Coefficient c_m for -n/2 <= m <= n/2.
  std::complex<double> coeff(int m) const;
  std::span<const std::complex<double>> half_spectrum() const { return coeffs_; }
  // Modes -n/2 .. n/2-1 in increasing order.
  std::vector<std::complex<double>> full_spectrum() const;

  // Real Fourier series f = a_0 + sum a_k cos kt + b_k sin kt.
  double cosine_coeff(int k) const;
  double sine_coeff(int k) const;
  std::vector<double> cosine_modes(int count) const;  // a_1 .. a_count
  std::vector<double> sine_modes(int count) const;    // b_1 .. b_count

  Parity parity() const { return parity_; }
  double mean() const { return coeffs_.empty() ? 0.0 : coeffs_[0].real(); }
  bool zero_mean() const;
  double max_abs() const;
  double min() const;
  double max() const;
  // Sum of |c_m| over all m != 0.
  double coefficient_l1() const;

  // Trigonometric interpolant evaluated off-grid.
  double operator()(double t) const;

  // Spectral resampling: zero-pads or truncates the spectrum.
  PeriodicFunction resampled(int n_grid) const;
  // Keeps modes |m| <= max_mode (and drops the mean if requested).
  PeriodicFunction truncated(int max_mode) const;
  PeriodicFunction without_mean() const;
  // Projects onto the cosine (even) or sine (odd) subspace and relabels.
  PeriodicFunction with_parity(Parity p) const;

 private:
  std::vector<double> samples_;
  std::vector<std::complex<double>> coeffs_;
  Parity parity_ = Parity::none;
};

// Both operands must live on the same grid.
void require_same_grid(const PeriodicFunction& f, const PeriodicFunction& g);

Parity product_parity(Parity a, Parity b);
Parity sum_parity(Parity a, Parity b);

}  // namespace capwave
