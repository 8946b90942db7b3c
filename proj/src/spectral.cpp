#include "capwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "capwave/fft.hpp"

namespace capwave {

StripDepth::StripDepth(double d) : d_(d) {
  if (!(d > 0.0)) throw std::invalid_argument("StripDepth: depth must be positive, got " + std::to_string(d));
}

double mean(const PeriodicFunction& f) { return f.mean(); }

namespace {

Parity flipped(Parity p) {
  switch (p) {
    case Parity::even: return Parity::odd;
    case Parity::odd: return Parity::even;
    case Parity::none: return Parity::none;
  }
  return Parity::none;
}

// Applies a diagonal multiplier mode-by-mode for 1 <= m < n/2; the mean and
// Nyquist modes are set to zero.
template <class Multiplier>
PeriodicFunction apply_multiplier(const PeriodicFunction& f, Multiplier mult, Parity parity) {
  auto src = f.half_spectrum();
  std::vector<std::complex<double>> c(src.size());
  const size_t half = src.size() - 1;
  for (size_t m = 1; m < half; ++m) c[m] = mult(static_cast<int>(m)) * src[m];
  return PeriodicFunction::from_half_spectrum(std::move(c), parity);
}

void require_zero_mean(const PeriodicFunction& f, const char* who) {
  if (!f.zero_mean())
    throw std::invalid_argument(std::string(who) + ": input must have zero mean (mean = " +
                                std::to_string(f.mean()) + ")");
}

// Samples of the trigonometric interpolant on the 2x grid.
std::vector<double> padded_samples(const PeriodicFunction& f) {
  auto src = f.half_spectrum();
  const size_t half = src.size() - 1;
  std::vector<std::complex<double>> c(2 * half + 1);
  for (size_t m = 0; m < half; ++m) c[m] = src[m];
  c[half] = 0.5 * src[half];
  std::vector<double> out(4 * half);
  fft::inverse(c, out);
  return out;
}

// Transforms 2x-grid samples and keeps modes |m| < n/2 of the original grid.
PeriodicFunction from_padded(const std::vector<double>& padded, int n_grid, Parity parity) {
  std::vector<std::complex<double>> big(padded.size() / 2 + 1);
  fft::forward(padded, big);
  const size_t half = static_cast<size_t>(n_grid / 2);
  std::vector<std::complex<double>> c(half + 1);
  for (size_t m = 0; m < half; ++m) c[m] = big[m];
  return PeriodicFunction::from_half_spectrum(std::move(c), parity);
}

template <class Op>
PeriodicFunction padded_unary(const PeriodicFunction& f, Op op, Parity parity) {
  auto p = padded_samples(f);
  for (double& v : p) v = op(v);
  return from_padded(p, f.n_grid(), parity);
}

template <class Op>
PeriodicFunction padded_binary(const PeriodicFunction& f, const PeriodicFunction& g, Op op,
                               Parity parity) {
  require_same_grid(f, g);
  auto p = padded_samples(f);
  auto q = padded_samples(g);
  for (size_t j = 0; j < p.size(); ++j) p[j] = op(p[j], q[j]);
  return from_padded(p, f.n_grid(), parity);
}

template <class Op>
PeriodicFunction samplewise(const PeriodicFunction& f, Op op, Parity parity) {
  std::vector<double> s(f.samples().begin(), f.samples().end());
  for (double& v : s) v = op(v);
  return PeriodicFunction::from_samples(std::move(s), parity);
}

Parity parity_after_shift(const PeriodicFunction& f, double c) {
  // Adding a nonzero constant destroys odd symmetry.
  if (c == 0.0) return f.parity();
  return f.parity() == Parity::even ? Parity::even : Parity::none;
}

}  // namespace

PeriodicFunction derivative(const PeriodicFunction& f) {
  return apply_multiplier(
      f, [](int m) { return std::complex<double>(0.0, m); }, flipped(f.parity()));
}

PeriodicFunction hilbert(const PeriodicFunction& f) {
  require_zero_mean(f, "hilbert");
  return apply_multiplier(
      f, [](int) { return std::complex<double>(0.0, -1.0); }, flipped(f.parity()));
}

double strip_multiplier_gap(int m, double d) {
  const double x = 2.0 * std::abs(m) * d;
  return 2.0 / std::expm1(x);
}

double strip_multiplier(int m, double d) { return 1.0 + strip_multiplier_gap(m, d); }

PeriodicFunction hilbert_strip(const PeriodicFunction& f, StripDepth d) {
  require_zero_mean(f, "hilbert_strip");
  const double depth = d.value();
  return apply_multiplier(
      f, [depth](int m) { return std::complex<double>(0.0, -strip_multiplier(m, depth)); },
      flipped(f.parity()));
}

double kappa_tail_bound(StripDepth d, int p) {
  if (p < 0) throw std::invalid_argument("kappa_tail_bound: p must be nonnegative");
  // m^{p+1} lambda_m is unimodal in m; scan until it has decayed well past
  // its peak and underflowed relative to the running maximum.
  double best = 0.0;
  double prev = 0.0;
  for (int m = 1; m < 1000000; ++m) {
    const double term = std::pow(static_cast<double>(m), p + 1) * strip_multiplier_gap(m, d.value());
    best = std::max(best, term);
    if (m > 1 && term < prev && term < 1e-3 * best) break;
    if (term == 0.0) break;
    prev = term;
  }
  return best;
}

PeriodicFunction Conjugation::operator()(const PeriodicFunction& f) const {
  return is_deep() ? hilbert(f) : hilbert_strip(f, StripDepth(depth_));
}

// ---- pointwise algebra -------------------------------------------------

PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g) {
  require_same_grid(f, g);
  std::vector<double> s(f.samples().begin(), f.samples().end());
  for (size_t j = 0; j < s.size(); ++j) s[j] += g.samples()[j];
  return PeriodicFunction::from_samples(std::move(s), sum_parity(f.parity(), g.parity()));
}

PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g) {
  require_same_grid(f, g);
  std::vector<double> s(f.samples().begin(), f.samples().end());
  for (size_t j = 0; j < s.size(); ++j) s[j] -= g.samples()[j];
  return PeriodicFunction::from_samples(std::move(s), sum_parity(f.parity(), g.parity()));
}

PeriodicFunction operator-(const PeriodicFunction& f) {
  return samplewise(f, [](double v) { return -v; }, f.parity());
}

PeriodicFunction operator+(const PeriodicFunction& f, double c) {
  return samplewise(f, [c](double v) { return v + c; }, parity_after_shift(f, c));
}
PeriodicFunction operator+(double c, const PeriodicFunction& f) { return f + c; }
PeriodicFunction operator-(const PeriodicFunction& f, double c) { return f + (-c); }
PeriodicFunction operator-(double c, const PeriodicFunction& f) { return (-f) + c; }

PeriodicFunction operator*(double c, const PeriodicFunction& f) {
  return samplewise(f, [c](double v) { return c * v; }, f.parity());
}
PeriodicFunction operator*(const PeriodicFunction& f, double c) { return c * f; }

PeriodicFunction operator*(const PeriodicFunction& f, const PeriodicFunction& g) {
  return padded_binary(f, g, [](double a, double b) { return a * b; },
                       product_parity(f.parity(), g.parity()));
}

PeriodicFunction operator/(const PeriodicFunction& f, const PeriodicFunction& g) {
  require_same_grid(f, g);
  auto p = padded_samples(f);
  auto q = padded_samples(g);
  for (size_t j = 0; j < p.size(); ++j) {
    if (std::abs(q[j]) < kDegenerateThreshold)
      throw DegenerateMetric("division by near-zero value " + std::to_string(q[j]));
    p[j] /= q[j];
  }
  return from_padded(p, f.n_grid(), product_parity(f.parity(), g.parity()));
}

PeriodicFunction pow(const PeriodicFunction& f, double r) {
  const bool integral = std::nearbyint(r) == r;
  auto p = padded_samples(f);
  for (double v : p) {
    if (!integral && v < kDegenerateThreshold)
      throw DegenerateMetric("pow: non-positive base " + std::to_string(v) + " for exponent " +
                             std::to_string(r));
    if (integral && r < 0 && std::abs(v) < kDegenerateThreshold)
      throw DegenerateMetric("pow: near-zero base for negative exponent");
  }
  Parity parity = f.parity() == Parity::even ? Parity::even : Parity::none;
  if (integral && f.parity() == Parity::odd)
    parity = (static_cast<long long>(r) % 2 == 0) ? Parity::even : Parity::odd;
  for (double& v : p) v = std::pow(v, r);
  return from_padded(p, f.n_grid(), parity);
}

PeriodicFunction exp(const PeriodicFunction& f) {
  return padded_unary(f, [](double v) { return std::exp(v); },
                      f.parity() == Parity::even ? Parity::even : Parity::none);
}

PeriodicFunction log(const PeriodicFunction& f) {
  auto p = padded_samples(f);
  for (double& v : p) {
    if (v < kDegenerateThreshold) throw DegenerateMetric("log: non-positive argument " + std::to_string(v));
    v = std::log(v);
  }
  return from_padded(p, f.n_grid(), f.parity() == Parity::even ? Parity::even : Parity::none);
}

PeriodicFunction sin(const PeriodicFunction& f) {
  return padded_unary(f, [](double v) { return std::sin(v); }, f.parity());
}

PeriodicFunction cos(const PeriodicFunction& f) {
  return padded_unary(f, [](double v) { return std::cos(v); },
                      f.parity() == Parity::none ? Parity::none : Parity::even);
}

PeriodicFunction atan2(const PeriodicFunction& y, const PeriodicFunction& x) {
  Parity parity = Parity::none;
  if (x.parity() == Parity::even && (y.parity() == Parity::odd || y.parity() == Parity::even))
    parity = y.parity();
  return padded_binary(y, x, [](double a, double b) { return std::atan2(a, b); }, parity);
}

PeriodicFunction collocated_product(const PeriodicFunction& f, const PeriodicFunction& g) {
  require_same_grid(f, g);
  std::vector<double> s(f.samples().begin(), f.samples().end());
  for (size_t j = 0; j < s.size(); ++j) s[j] *= g.samples()[j];
  return PeriodicFunction::from_samples(std::move(s), product_parity(f.parity(), g.parity()));
}

PeriodicFunction collocated_pow(const PeriodicFunction& f, double r) {
  for (double v : f.samples())
    if (v < kDegenerateThreshold)
      throw DegenerateMetric("collocated_pow: base " + std::to_string(v) + " below threshold");
  return samplewise(f, [r](double v) { return std::pow(v, r); },
                    f.parity() == Parity::even ? Parity::even : Parity::none);
}

double mean_product(const PeriodicFunction& f, const PeriodicFunction& g) {
  require_same_grid(f, g);
  auto a = f.half_spectrum();
  auto b = g.half_spectrum();
  const size_t half = a.size() - 1;
  double s = a[0].real() * b[0].real() + a[half].real() * b[half].real();
  for (size_t m = 1; m < half; ++m) s += 2.0 * (a[m] * std::conj(b[m])).real();
  return s;
}

}  // namespace capwave
