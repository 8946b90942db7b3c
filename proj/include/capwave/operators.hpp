#pragma once

#include <limits>
#include <string>

#include "capwave/periodic_function.hpp"
#include "capwave/spectral.hpp"

namespace capwave {

/// Infinite depth (irrotational) or a flat bed at conformal mean depth h with
/// constant vorticity gamma.
class DepthMode {
 public:
  static DepthMode infinite() { return DepthMode(); }
  static DepthMode finite(double h, double gamma);

  bool is_finite() const { return finite_; }
  // +inf for infinite depth.
  double h() const { return h_; }
  // Always 0 for infinite depth.
  double gamma() const { return gamma_; }
  std::string describe() const;

 private:
  DepthMode() = default;
  bool finite_ = false;
  double h_ = std::numeric_limits<double>::infinity();
  double gamma_ = 0.0;
};

/// Scaled parameters alpha = g/(c^2 k) (or g/(k lambda^2)) and
/// beta = sigma k / c^2 (or k sigma / lambda^2), with the physical constants.
/// alpha <= 0 is allowed and selects the pure-capillary limit.
struct WaveParams {
  double alpha = 0.0;
  double beta = 1.0;
  double g = 9.81;
  double sigma = 0.074;
  DepthMode depth = DepthMode::infinite();

  void validate() const;
};

// W(w) = w'^2 + (1 + C w')^2 by collocation, C the deep or strip transform. The mean is
// kept. Throws DegenerateMetric when min W < 1e-12.
PeriodicFunction conformal_metric(const PeriodicFunction& w, const Conjugation& transform);

// Theta(w) = arg(1 + C w' + i w'), odd and zero-mean for even w.
PeriodicFunction theta_of(const PeriodicFunction& w);

// b(alpha, w) = [W^{1/2}]^{-1} [W^{-1/2} + 2 alpha w W^{1/2}].
double bernoulli_b(double alpha, const PeriodicFunction& w);

// Infinite-depth residual
//   F = w'' - (w'/2beta) C(R) - (1/2beta)(1 + C w') R,
//   R = W^{-1/2} - (b - 2 alpha w) W^{1/2}.
PeriodicFunction residual_inf(const WaveParams& params, const PeriodicFunction& w);

// G(theta) = theta' - (1/2beta) e^{-C theta} + (1/2beta) ([e^{-C theta}]/[e^{C theta}]) e^{C theta}.
PeriodicFunction residual_G(double beta, const PeriodicFunction& theta);

// The theta-form of F(0, beta, .) obtained by substituting
// w' = e^{C theta} sin theta and 1 + C w' = e^{C theta} cos theta, evaluated
// term by term.
PeriodicFunction residual_G_tilde(double beta, const PeriodicFunction& theta);

// k(alpha, beta) = sqrt(g beta / (alpha sigma)); requires alpha > 0.
double wavenumber_k(double alpha, double beta, double g, double sigma);
double wavenumber_k(const WaveParams& params);

// C for alpha <= 0, C_{h k(alpha, beta)} for alpha > 0 (finite depth only).
Conjugation scaled_conjugation(const WaveParams& params);

// 1 + gamma (alpha^3 sigma/(g^3 beta))^{1/4}
//       ([w^2]/(2h) sqrt(alpha sigma/(g beta)) + C(w w') - w - w C w'),
// identically 1 for alpha <= 0 or gamma = 0.
PeriodicFunction vorticity_bracket(const WaveParams& params, const PeriodicFunction& w);

// Scaled head making [A(alpha, beta, w)] = 0; b(0, w) for alpha <= 0.
double q_hat(const WaveParams& params, const PeriodicFunction& w);

// A(alpha, beta, w) = B^2 W^{-1/2} - (q_hat - 2 alpha w) W^{1/2} with the
// scaled strip transform (alpha clamped at 0 from below).
PeriodicFunction frak_A(const WaveParams& params, const PeriodicFunction& w);

// Finite-depth residual
//   w'' - (w'/2beta) C(A) - (1/2beta)(1 + C w') A;
// equals residual_inf(0, beta, w) for alpha <= 0.
PeriodicFunction residual_fd(const WaveParams& params, const PeriodicFunction& w);

// Residual appropriate for params.depth.
PeriodicFunction residual(const WaveParams& params, const PeriodicFunction& w);
// Closing scalar: b(alpha, w) in infinite depth, q_hat otherwise.
double head_constant(const WaveParams& params, const PeriodicFunction& w);

struct PhysicalParams {
  double k = 0.0;       // wavenumber, period 2 pi / k
  double lambda = 0.0;  // m/h - gamma h/2 in finite depth; wave speed c in infinite depth
  double c = 0.0;       // equals lambda
  double m = std::numeric_limits<double>::quiet_NaN();  // mass flux, finite depth only
  double Q = std::numeric_limits<double>::quiet_NaN();  // lambda^2 * scaled head
};

// Inverts the change of variables; requires alpha > 0. `scaled_head` is
// q_hat (or b) of a solution; pass NaN to leave Q undefined.
PhysicalParams physical_params(const WaveParams& params,
                               double scaled_head = std::numeric_limits<double>::quiet_NaN());
// Mass flux from the Bernoulli-free speed parameter: m = h lambda + h^2 gamma/2.
double mass_flux(double h, double lambda, double gamma);
// Forward change of variables (k, lambda) -> (alpha, beta).
WaveParams scaled_params(double k, double lambda, double g, double sigma, DepthMode depth);

}  // namespace capwave
