#pragma once

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "capwave/operators.hpp"
#include "capwave/periodic_function.hpp"

namespace capwave {

using ResidualFn = std::function<PeriodicFunction(const WaveParams&, const PeriodicFunction&)>;

struct NewtonOptions {
  int M = 128;           // unknowns: cosine modes 1..M
  double tol = 1e-11;    // on max |residual|
  int max_iter = 25;
  double fd_step = 0.0;  // <= 0: 1e-6 (1 + max|w|)
  double singular_tol = 1e-10;
  double near_singular_tol = 1e-6;
};

class SolverFailure : public std::runtime_error {
 public:
  enum class Kind { max_iter, singular_jacobian, degenerate_metric };
  SolverFailure(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(SolverFailure::Kind k);

struct GeometryDiagnostics {
  double k = 1.0;  // wavenumber used for the curve (1 in conformal units)
  double steepness = 0.0;
  bool injective = true;
  bool above_bed = true;
  int crossings = 0;
};

struct WaveSolution {
  WaveParams params;
  PeriodicFunction w;
  double residual_norm = 0.0;
  double b_or_qhat = 0.0;
  int newton_iters = 0;
  std::vector<double> residual_history;
  double jacobian_sigma_min = std::numeric_limits<double>::quiet_NaN();
  bool near_singular = false;
  GeometryDiagnostics geometry;

  const DepthMode& depth() const { return params.depth; }
};

// Diagnostics for a solution: steepness, injectivity on >= 1024 points and
// the above-bed condition.
GeometryDiagnostics diagnose_geometry(const WaveParams& params, const PeriodicFunction& w);

/// Full Newton on the cosine modes 1..opt.M of w (grid taken from w0) with a
/// central-difference Jacobian refreshed every iteration.
WaveSolution newton_solve(const ResidualFn& residual, const WaveParams& params,
                          const PeriodicFunction& w0, const NewtonOptions& opt = {});

struct ParamPoint {
  double alpha = 0.0;
  double beta = 1.0;
};

struct StepRecord {
  double alpha = 0.0;
  double beta = 0.0;
  double step = 0.0;  // alpha increment attempted
  bool accepted = false;
  int newton_iters = 0;
  std::string note;
};

enum class BranchStatus { completed, step_underflow, fold };
const char* to_string(BranchStatus s);

struct Branch {
  double start_A = 0.0;
  DepthMode depth = DepthMode::infinite();
  std::vector<WaveSolution> solutions;
  std::vector<StepRecord> step_history;
  BranchStatus status = BranchStatus::completed;
  std::string message;
};

struct ContinuationOptions {
  NewtonOptions newton;
  int n_grid = 0;  // <= 0: 4 M
  int max_halvings = 6;
  double g = 9.81;
  double sigma = 0.074;
};

/// Natural-parameter continuation from the Crapper point (0, beta_A, w_A)
/// through `schedule`, whose first entry must be that point.
Branch continue_branch(double start_A, std::span<const ParamPoint> schedule, const DepthMode& depth,
                       const ContinuationOptions& options = {});

// n + 1 points alpha_0..alpha_end at fixed beta (inclusive).
std::vector<ParamPoint> linear_schedule(double alpha_begin, double alpha_end, int steps, double beta);

struct CurveProbe {
  double A = 0.0;
  double amplitude = 0.02;
  int mode = 3;
};

struct CurveCheckEntry {
  CurveProbe probe;
  bool converged = false;
  std::string failure;
  double recovered_A = std::numeric_limits<double>::quiet_NaN();
  double first_coeff = std::numeric_limits<double>::quiet_NaN();
  double coefficient_error = std::numeric_limits<double>::infinity();  // max |a_n - 4(-A)^n|
  double profile_distance = std::numeric_limits<double>::infinity();   // max |w - w_A|
  double mirror_error = std::numeric_limits<double>::quiet_NaN();      // max |w(t) - w_{|A|}(t + pi)| for A < 0
  int newton_iters = 0;
  int modes = 0;  // M actually used
};

struct CurveCheckReport {
  std::vector<CurveCheckEntry> entries;
  bool all_converged = true;
  double max_profile_distance = 0.0;
  double max_coefficient_error = 0.0;
};

/// Newton at alpha = 0, beta = beta_A from perturbed Crapper data; the result
/// is matched to the closed form through A recovered from beta_A (sign from
/// the first cosine coefficient, which is -4A). M is raised per probe to
/// modes_to_resolve(A, opt.tol) when that is larger.
// Smallest even M with M^2 * 4|A|^M below tol/10: below that the truncated
// tail of w_A alone keeps the residual above tol.
int modes_to_resolve(double A, double tol);

CurveCheckReport crapper_curve_check(std::span<const CurveProbe> probes, const NewtonOptions& opt = {});
// Probes of default_probe(A) for each A.
CurveCheckReport crapper_curve_check(std::span<const double> A_values, int M);

// 0.02 cos 3t, shrunk to 0.4 m_A / 3 when smaller, m_A = ((1-|A|)/(1+|A|))^2
// being min (1 + C w_A'). Larger kicks near |A| = 1 can fold the metric or
// drop Newton into the flat solution, which solves for every beta.
CurveProbe default_probe(double A);

}  // namespace capwave
