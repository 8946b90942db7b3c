#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "capwave/periodic_function.hpp"

namespace capwave {

// Cosine basis cos(n t) spans the even w-space, sine basis sin(n t) the odd
// theta-space; n = 1..M in both.
enum class Basis { cosine, sine };
enum class BuiltFrom { finite_difference, analytic };

const char* to_string(Basis b);

struct OperatorMatrix {
  Eigen::MatrixXd entries;  // rows: range modes, columns: domain modes
  Basis domain = Basis::cosine;
  Basis range = Basis::cosine;
  BuiltFrom built_from = BuiltFrom::finite_difference;

  int modes() const { return static_cast<int>(entries.cols()); }
};

using FunctionMap = std::function<PeriodicFunction(const PeriodicFunction&)>;

/// Central-difference Jacobian of `op` at `base` on the first M basis
/// functions of `domain`, projected onto the first `range_modes` (default M)
/// modes of `range`. A nonpositive `step` selects 1e-6 * (1 + max|base|).
OperatorMatrix jacobian_fd(const FunctionMap& op, const PeriodicFunction& base, int M,
                           double step = 0.0, Basis domain = Basis::cosine,
                           Basis range = Basis::cosine, int range_modes = 0);

double default_fd_step(const PeriodicFunction& base);

// Coefficient of cos(k t), k = 0..count-1, of exp(+C theta_A) and
// exp(-C theta_A) from their geometric series.
std::vector<double> exp_hilbert_theta_coeffs(double A, int count, int sign);

/// Linearisation of G about theta_A in the sine -> cosine basis:
///   theta' + (1/2beta_A)(e^{-C theta_A} + e^{C theta_A}) C theta + C_A(theta) e^{C theta_A},
/// with C_A(theta) fixed by the zero-mean condition. Built from closed-form
/// Fourier coefficients.
OperatorMatrix dG_matrix(double A, int M);

// The scalar C_A(sin n t) for n = 1..M.
std::vector<double> dG_mean_constants(double A, int M);

/// dG[theta_A] theta multiplied by (1 + A^4 - 2A^2 cos 2t), in the unknowns
/// (C_A, a_1, ..., a_M). Row j (j = 0..M) is the cos(j t) coefficient.
/// Banded: each a_n couples to rows n and n +- 2 only.
Eigen::MatrixXd dG_cleared_system(double A, int M);

struct RecurrenceVerdict {
  bool injective = false;
  std::string description;
};

struct RecurrenceDetails {
  std::vector<int> k;               // indices 3..M-2
  std::vector<double> ratios;       // n_k = (k-2+q)/(A^2(k+2+q)) read off the rows
  double ratio_limit = 0.0;         // 1/A^2
  double factorization_error = 0.0;  // how far row k is from -A^2(k+2+q)(A_k - n_k A_{k-2})
  // Reduced a_2- and a_1-equations, normalised by (1 + A^2) so that the
  // q_A denominator is cleared.
  double a2_coefficient = 0.0;
  double a1_coefficient = 0.0;
  double a2_coefficient_raw = 0.0;
  double a1_coefficient_raw = 0.0;
};

struct KernelReport {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::vector<std::vector<double>> kernel_vectors;
  RecurrenceVerdict verdict;
  double A = 0.0;
  int M = 0;
  std::optional<RecurrenceDetails> recurrence;
};

// SVD of the matrix; kernel candidates are right singular vectors with
// singular value below `tol`.
KernelReport smallest_singular(const OperatorMatrix& matrix, double tol = 1e-6);

// Smallest and largest singular values only.
std::pair<double, double> singular_range(const Eigen::MatrixXd& m);

/// Runs the coefficient-recurrence injectivity argument for dG[theta_A] on M
/// modes and attaches the SVD of dG_matrix(A, M). A = 0 reports the sin t
/// kernel.
KernelReport recurrence_scan(double A, int M, double sigma_tol = 1e-6);

}  // namespace capwave
