#pragma once

#include "capwave/periodic_function.hpp"

namespace capwave {

inline constexpr double kMaxCrapperParam = 0.99;

/// Parameter A of the explicit pure-capillary family, |A| < 1.
class CrapperParam {
 public:
  explicit CrapperParam(double A);
  double value() const { return A_; }

 private:
  double A_;
};

// (1 + A^2) / (1 - A^2)
double beta_of(CrapperParam A);
// 1 / beta_of(A)
double q_of(CrapperParam A);
// Inverse of beta_of on A >= 0. Requires beta >= 1.
double crapper_param_from_beta(double beta);

// w_A(t) = 2(1 - A^2)/(1 + A^2 + 2A cos t) - 2, even with zero mean.
// Its cosine coefficients are 4(-A)^n.
PeriodicFunction crapper_wave(CrapperParam A, int n_grid);

// Tangent angle of the Crapper profile, from closed-form w_A' and 1 + C w_A'.
// Rejects samples whose consecutive values jump by more than pi.
PeriodicFunction crapper_theta(CrapperParam A, int n_grid);

// Closed forms of the boundary data of F_A(z) = 2(1 - Az)/(1 + Az) - 2 on |z| = 1.
double crapper_wave_at(double A, double t);
double crapper_hilbert_at(double A, double t);          // C w_A
double crapper_derivative_at(double A, double t);       // w_A'
double crapper_hilbert_derivative_at(double A, double t);  // C w_A'
// exp(C theta_A) = (1 + A^2 - 2A cos t) / (1 + A^2 + 2A cos t)
double crapper_exp_hilbert_theta_at(double A, double t);

// max over the grid of |LHS - RHS| for
//   |1 - A e^{it}|^2 / |1 + A e^{it}|^2
//     + 8A(1 + A^2) cos t / (|1 + A e^{it}|^2 |1 - A e^{it}|^2)
//   = |1 + A e^{it}|^2 / |1 - A e^{it}|^2.
double verify_identity(CrapperParam A, int n_grid);

// Grid size for which 4|A|^n falls below `tol` at the Nyquist mode, with the
// usual safety factor: n_grid >= 10 log(tol) / log|A|.
int recommended_grid(double A, double tol = 1e-16);

}  // namespace capwave
