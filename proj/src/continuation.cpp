#include "capwave/continuation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "capwave/crapper.hpp"
#include "capwave/geometry.hpp"
#include "capwave/linearization.hpp"

namespace capwave {

const char* to_string(SolverFailure::Kind k) {
  switch (k) {
    case SolverFailure::Kind::max_iter: return "max_iter";
    case SolverFailure::Kind::singular_jacobian: return "singular_jacobian";
    case SolverFailure::Kind::degenerate_metric: return "degenerate_metric";
  }
  return "unknown";
}

const char* to_string(BranchStatus s) {
  switch (s) {
    case BranchStatus::completed: return "completed";
    case BranchStatus::step_underflow: return "step_underflow";
    case BranchStatus::fold: return "fold";
  }
  return "unknown";
}

GeometryDiagnostics diagnose_geometry(const WaveParams& params, const PeriodicFunction& w) {
  GeometryDiagnostics g;
  g.k = params.alpha > 0.0 ? wavenumber_k(params) : 1.0;
  g.steepness = steepness(w);
  const auto transform = params.depth.is_finite() ? scaled_conjugation(params) : Conjugation::deep();
  const auto fine = w.resampled(std::max(w.n_grid(), 1024));
  const auto rep = check_injective(surface_profile(fine, g.k, transform));
  g.injective = rep.injective;
  g.crossings = static_cast<int>(rep.crossings.size());
  g.above_bed = params.depth.is_finite() && params.alpha > 0.0 ? check_above_bed(w, g.k, params.depth.h()) : true;
  return g;
}

namespace {

double sup_norm(const PeriodicFunction& f) { return f.max_abs(); }

PeriodicFunction eval(const ResidualFn& residual, const WaveParams& params, const PeriodicFunction& w) {
  try {
    auto r = residual(params, w);
    for (double v : r.samples())
      if (!std::isfinite(v)) throw SolverFailure(SolverFailure::Kind::degenerate_metric, "residual is not finite");
    return r;
  } catch (const DegenerateMetric& e) {
    throw SolverFailure(SolverFailure::Kind::degenerate_metric, e.what());
  }
}

}  // namespace

WaveSolution newton_solve(const ResidualFn& residual, const WaveParams& params, const PeriodicFunction& w0,
                          const NewtonOptions& opt) {
  params.validate();
  const int n = w0.n_grid();
  const int M = opt.M;
  if (M < 1 || 2 * M >= n) throw std::invalid_argument("newton_solve: need 1 <= M < n_grid/2");

  auto coeffs = w0.cosine_modes(M);
  auto w = PeriodicFunction::from_cosine_modes(coeffs, n);
  WaveSolution sol;
  sol.params = params;

  const FunctionMap op = [&](const PeriodicFunction& v) { return eval(residual, params, v); };
  auto F = op(w);
  double rnorm = sup_norm(F);
  sol.residual_history.push_back(rnorm);
  int iter = 0;
  while (rnorm >= opt.tol) {
    if (iter >= opt.max_iter) {
      std::ostringstream os;
      os << "newton_solve: no convergence after " << opt.max_iter << " iterations (residual " << rnorm << ")";
      throw SolverFailure(SolverFailure::Kind::max_iter, os.str());
    }
    const auto J = jacobian_fd(op, w, M, opt.fd_step);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(J.entries, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smin = svd.singularValues()(M - 1);
    sol.jacobian_sigma_min = smin;
    if (!(smin > opt.singular_tol)) {
      std::ostringstream os;
      os << "newton_solve: singular Jacobian (sigma_min = " << smin << ")";
      throw SolverFailure(SolverFailure::Kind::singular_jacobian, os.str());
    }
    const auto fm = F.cosine_modes(M);
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(fm.data(), M);
    const Eigen::VectorXd delta = svd.solve(rhs);

    // Full step unless the trial leaves the admissible set; then backtrack.
    double lambda = 1.0;
    for (int tries = 0;; ++tries) {
      std::vector<double> trial(coeffs);
      for (int j = 0; j < M; ++j) trial[static_cast<size_t>(j)] -= lambda * delta(j);
      try {
        auto wt = PeriodicFunction::from_cosine_modes(trial, n);
        auto Ft = op(wt);
        coeffs = std::move(trial);
        w = std::move(wt);
        F = std::move(Ft);
        break;
      } catch (const SolverFailure&) {
        if (tries >= 5) throw;
        lambda *= 0.5;
      }
    }
    ++iter;
    rnorm = sup_norm(F);
    sol.residual_history.push_back(rnorm);
  }

  if (std::isnan(sol.jacobian_sigma_min)) {
    // Converged without a Jacobian: still report conditioning at the solution.
    sol.jacobian_sigma_min = singular_range(jacobian_fd(op, w, M, opt.fd_step).entries).first;
  }
  sol.near_singular = sol.jacobian_sigma_min < opt.near_singular_tol;
  sol.w = w;
  sol.residual_norm = rnorm;
  sol.newton_iters = iter;
  sol.b_or_qhat = head_constant(params, w);
  sol.geometry = diagnose_geometry(params, w);
  return sol;
}

std::vector<ParamPoint> linear_schedule(double alpha_begin, double alpha_end, int steps, double beta) {
  if (steps < 1) throw std::invalid_argument("linear_schedule: steps must be positive");
  std::vector<ParamPoint> s;
  for (int i = 0; i <= steps; ++i)
    s.push_back({alpha_begin + (alpha_end - alpha_begin) * i / steps, beta});
  return s;
}

Branch continue_branch(double start_A, std::span<const ParamPoint> schedule, const DepthMode& depth,
                       const ContinuationOptions& options) {
  if (start_A == 0.0)
    throw std::invalid_argument("continue_branch: A = 0 is a singular start (flat water, singular Jacobian)");
  const CrapperParam A(start_A);
  if (schedule.empty()) throw std::invalid_argument("continue_branch: empty schedule");
  if (schedule[0].alpha > 0.0) throw std::invalid_argument("continue_branch: schedule must start at alpha <= 0");
  const double beta_A = beta_of(A);
  if (std::abs(schedule[0].beta - beta_A) > 1e-12 * beta_A)
    throw std::invalid_argument("continue_branch: schedule must start at beta = beta_A");
  int direction = 0;
  for (size_t i = 1; i < schedule.size(); ++i) {
    const double d = schedule[i].alpha - schedule[i - 1].alpha;
    const int s = (d > 0) - (d < 0);
    if (s != 0 && direction != 0 && s != direction)
      throw std::invalid_argument("continue_branch: alpha must be monotone along the schedule");
    if (s != 0) direction = s;
  }

  const int n = options.n_grid > 0 ? options.n_grid : 4 * options.newton.M;
  Branch br;
  br.start_A = start_A;
  br.depth = depth;

  WaveParams p;
  p.g = options.g;
  p.sigma = options.sigma;
  p.depth = depth;
  p.alpha = schedule[0].alpha;
  p.beta = schedule[0].beta;
  const ResidualFn res = capwave::residual;
  try {
    br.solutions.push_back(newton_solve(res, p, crapper_wave(A, n), options.newton));
  } catch (const SolverFailure& e) {
    br.status = BranchStatus::step_underflow;
    br.message = std::string("start point failed: ") + e.what();
    return br;
  }
  br.step_history.push_back({p.alpha, p.beta, 0.0, true, br.solutions.back().newton_iters, "start"});

  ParamPoint cur = schedule[0];
  for (size_t i = 1; i < schedule.size(); ++i) {
    const ParamPoint target = schedule[i];
    double da = target.alpha - cur.alpha, db = target.beta - cur.beta;
    int halvings = 0;
    bool reached = false;
    while (!reached) {
      ParamPoint attempt{cur.alpha + da, cur.beta + db};
      const bool last = std::abs(da) >= std::abs(target.alpha - cur.alpha) &&
                        std::abs(db) >= std::abs(target.beta - cur.beta);
      if (last) attempt = target;
      WaveParams q = p;
      q.alpha = attempt.alpha;
      q.beta = attempt.beta;
      try {
        auto sol = newton_solve(res, q, br.solutions.back().w, options.newton);
        br.step_history.push_back({attempt.alpha, attempt.beta, attempt.alpha - cur.alpha, true, sol.newton_iters, ""});
        br.solutions.push_back(std::move(sol));
        cur = attempt;
        reached = last;
      } catch (const SolverFailure& e) {
        br.step_history.push_back({attempt.alpha, attempt.beta, attempt.alpha - cur.alpha, false, 0, e.what()});
        if (++halvings > options.max_halvings) {
          br.status = e.kind() == SolverFailure::Kind::singular_jacobian ? BranchStatus::fold
                                                                          : BranchStatus::step_underflow;
          std::ostringstream os;
          os << "step underflow after " << options.max_halvings << " halvings towards alpha = " << target.alpha
             << "; last good alpha = " << cur.alpha << " (" << e.what() << ")";
          br.message = os.str();
          return br;
        }
        da *= 0.5;
        db *= 0.5;
      }
    }
  }
  br.status = BranchStatus::completed;
  return br;
}

int modes_to_resolve(double A, double tol) {
  const double a = std::abs(A);
  if (a == 0.0) return 2;
  if (!(a < 1.0)) throw std::invalid_argument("modes_to_resolve: need |A| < 1");
  int M = 2;
  while (4.0 * M * M * std::pow(a, M) >= 0.1 * tol) M += 2;
  return M;
}

CurveCheckReport crapper_curve_check(std::span<const CurveProbe> probes, const NewtonOptions& base) {
  CurveCheckReport rep;
  for (const auto& probe : probes) {
    CurveCheckEntry e;
    e.probe = probe;
    const CrapperParam A(probe.A);
    if (probe.A == 0.0) throw std::invalid_argument("crapper_curve_check: A must be nonzero");
    NewtonOptions opt = base;
    opt.M = std::max(base.M, modes_to_resolve(probe.A, base.tol));
    e.modes = opt.M;
    const int n = 4 * opt.M;
    WaveParams p;
    p.alpha = 0.0;
    p.beta = beta_of(A);
    const auto w0 = crapper_wave(A, n) +
                    PeriodicFunction::sample([&](double t) { return probe.amplitude * std::cos(probe.mode * t); }, n,
                                             Parity::even);
    try {
      const auto sol = newton_solve(residual_inf, p, w0, opt);
      e.converged = true;
      e.newton_iters = sol.newton_iters;
      e.first_coeff = sol.w.cosine_coeff(1);
      const double mag = crapper_param_from_beta(p.beta);
      e.recovered_A = e.first_coeff < 0.0 ? mag : -mag;
      const double Ar = e.recovered_A;
      double err = 0.0, pw = 1.0;
      for (int k = 1; k <= opt.M; ++k) {
        pw *= -Ar;
        err = std::max(err, std::abs(sol.w.cosine_coeff(k) - 4.0 * pw));
      }
      e.coefficient_error = err;
      e.profile_distance = (sol.w - crapper_wave(CrapperParam(Ar), n)).max_abs();
      if (Ar < 0.0) {
        const auto shifted = PeriodicFunction::sample(
            [&](double t) { return crapper_wave_at(-Ar, t + std::numbers::pi); }, n, Parity::even);
        e.mirror_error = (sol.w - shifted).max_abs();
      }
    } catch (const SolverFailure& f) {
      e.failure = f.what();
    }
    rep.all_converged = rep.all_converged && e.converged;
    if (e.converged) {
      rep.max_profile_distance = std::max(rep.max_profile_distance, e.profile_distance);
      rep.max_coefficient_error = std::max(rep.max_coefficient_error, e.coefficient_error);
    }
    rep.entries.push_back(e);
  }
  return rep;
}

CurveProbe default_probe(double A) {
  const double a = std::abs(A);
  const double margin = std::pow((1.0 - a) / (1.0 + a), 2);
  CurveProbe p;
  p.A = A;
  p.mode = 3;
  p.amplitude = std::min(0.02, 0.4 * margin / p.mode);
  return p;
}

CurveCheckReport crapper_curve_check(std::span<const double> A_values, int M) {
  std::vector<CurveProbe> probes;
  for (double A : A_values) probes.push_back(default_probe(A));
  NewtonOptions opt;
  opt.M = M;
  return crapper_curve_check(probes, opt);
}

}  // namespace capwave
