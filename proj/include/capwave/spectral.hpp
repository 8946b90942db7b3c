#pragma once

#include "capwave/periodic_function.hpp"

namespace capwave {

/// Depth of the conformal strip -d < y < 0; in applications d = k*h.
class StripDepth {
 public:
  explicit StripDepth(double d);
  double value() const { return d_; }

 private:
  double d_;
};

double mean(const PeriodicFunction& f);

// Multiplies mode m by i*m (Nyquist mode dropped).
PeriodicFunction derivative(const PeriodicFunction& f);

// Periodic Hilbert transform: mode m -> -i sgn(m) mode m, so cos -> sin and
// sin -> -cos. Rejects inputs without zero mean.
PeriodicFunction hilbert(const PeriodicFunction& f);

// Strip Hilbert transform: mode m -> -i sgn(m) coth(|m| d) mode m.
PeriodicFunction hilbert_strip(const PeriodicFunction& f, StripDepth d);

// coth(|m| d) as 1 + 2/(exp(2|m|d) - 1); equals 1 in double precision once
// 2|m|d exceeds ~37.
double strip_multiplier(int m, double d);
// lambda_m = 2/(exp(2|m|d) - 1), the deviation of the strip multiplier from 1.
double strip_multiplier_gap(int m, double d);

// sup_{m>=1} m^{p+1} * 2/(exp(2 m d) - 1).
double kappa_tail_bound(StripDepth d, int p);

/// Either the deep-water transform or its strip counterpart.
class Conjugation {
 public:
  static Conjugation deep() { return Conjugation(); }
  static Conjugation strip(StripDepth d) { return Conjugation(d.value()); }

  bool is_deep() const { return depth_ <= 0.0; }
  double depth() const { return depth_; }
  PeriodicFunction operator()(const PeriodicFunction& f) const;

 private:
  Conjugation() = default;
  explicit Conjugation(double d) : depth_(d) {}
  double depth_ = 0.0;
};

// ---- pointwise algebra -------------------------------------------------
// Sums are taken sample-wise. Products, quotients and transcendental maps are
// evaluated on a 2x zero-padded grid and truncated back to the input grid.

PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator-(const PeriodicFunction& f);
PeriodicFunction operator+(const PeriodicFunction& f, double c);
PeriodicFunction operator+(double c, const PeriodicFunction& f);
PeriodicFunction operator-(const PeriodicFunction& f, double c);
PeriodicFunction operator-(double c, const PeriodicFunction& f);
PeriodicFunction operator*(double c, const PeriodicFunction& f);
PeriodicFunction operator*(const PeriodicFunction& f, double c);

PeriodicFunction operator*(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator/(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction pow(const PeriodicFunction& f, double r);
PeriodicFunction exp(const PeriodicFunction& f);
PeriodicFunction log(const PeriodicFunction& f);
PeriodicFunction sin(const PeriodicFunction& f);
PeriodicFunction cos(const PeriodicFunction& f);
// Pointwise atan2(y, x), principal branch.
PeriodicFunction atan2(const PeriodicFunction& y, const PeriodicFunction& x);

// Collocation (sample-by-sample) product and power, without de-aliasing.
// Exact when the product is band-limited to the grid; used where the padded
// round trip would cost relative accuracy in small values.
PeriodicFunction collocated_product(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction collocated_pow(const PeriodicFunction& f, double r);

// Quadrature of f*g over one period divided by 2*pi (de-aliased, exact for
// products of grid functions).
double mean_product(const PeriodicFunction& f, const PeriodicFunction& g);

}  // namespace capwave
