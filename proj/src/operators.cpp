#include "capwave/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace capwave {

DepthMode DepthMode::finite(double h, double gamma) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("DepthMode::finite: h must be positive and finite");
  DepthMode d;
  d.finite_ = true;
  d.h_ = h;
  d.gamma_ = gamma;
  return d;
}

std::string DepthMode::describe() const {
  if (!finite_) return "infinite";
  std::ostringstream os;
  os << "finite(h=" << h_ << ", gamma=" << gamma_ << ")";
  return os.str();
}

void WaveParams::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("WaveParams: beta must be positive");
  if (!(g > 0.0)) throw std::invalid_argument("WaveParams: g must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("WaveParams: sigma must be positive");
  if (!std::isfinite(alpha)) throw std::invalid_argument("WaveParams: alpha must be finite");
}

PeriodicFunction conformal_metric(const PeriodicFunction& w, const Conjugation& transform) {
  const auto wp = derivative(w);
  const auto one_plus = 1.0 + transform(wp);
  auto metric = collocated_product(wp, wp) + collocated_product(one_plus, one_plus);
  const double lo = metric.min();
  if (lo < kDegenerateThreshold)
    throw DegenerateMetric("conformal metric vanishes: min W = " + std::to_string(lo));
  return metric;
}

PeriodicFunction theta_of(const PeriodicFunction& w) {
  conformal_metric(w, Conjugation::deep());
  const auto wp = derivative(w);
  const auto theta = atan2(wp, 1.0 + hilbert(wp));
  auto s = theta.samples();
  for (size_t j = 0; j < s.size(); ++j)
    if (std::abs(s[(j + 1) % s.size()] - s[j]) > std::numbers::pi)
      throw DegenerateMetric("theta_of: tangent angle leaves the principal branch");
  // The mean vanishes analytically; drop the rounding residue.
  return theta.without_mean();
}

namespace {

// W^{-1/2} - (head - 2 alpha w) W^{1/2} with its (rounding-level) mean removed.
PeriodicFunction bracket_term(const PeriodicFunction& lead, const PeriodicFunction& sqrt_metric,
                              double head, double alpha, const PeriodicFunction& w) {
  auto r = lead - (head - 2.0 * alpha * w) * sqrt_metric;
  return r.without_mean();
}

PeriodicFunction assemble_residual(const PeriodicFunction& wp, const PeriodicFunction& wpp,
                                   const PeriodicFunction& one_plus, const PeriodicFunction& r,
                                   const Conjugation& transform, double beta) {
  const double s = 0.5 / beta;
  return wpp - s * (wp * transform(r)) - s * (one_plus * r);
}

}  // namespace

double bernoulli_b(double alpha, const PeriodicFunction& w) {
  const auto metric = conformal_metric(w, Conjugation::deep());
  const auto root = collocated_pow(metric, 0.5);
  const auto inv_root = collocated_pow(metric, -0.5);
  return (inv_root.mean() + 2.0 * alpha * mean_product(w, root)) / root.mean();
}

PeriodicFunction residual_inf(const WaveParams& params, const PeriodicFunction& w) {
  params.validate();
  const auto deep = Conjugation::deep();
  const auto wp = derivative(w);
  const auto wpp = derivative(wp);
  const auto one_plus = 1.0 + hilbert(wp);
  const auto metric = conformal_metric(w, deep);
  const auto root = collocated_pow(metric, 0.5);
  const auto inv_root = collocated_pow(metric, -0.5);
  const double b = (inv_root.mean() + 2.0 * params.alpha * mean_product(w, root)) / root.mean();
  const auto r = bracket_term(inv_root, root, b, params.alpha, w);
  return assemble_residual(wp, wpp, one_plus, r, deep, params.beta);
}

PeriodicFunction residual_G(double beta, const PeriodicFunction& theta) {
  if (!(beta > 0.0)) throw std::invalid_argument("residual_G: beta must be positive");
  const auto ct = hilbert(theta);
  const auto ep = exp(ct);
  const auto em = exp(-ct);
  const double ratio = em.mean() / ep.mean();
  const double s = 0.5 / beta;
  return derivative(theta) - s * em + (s * ratio) * ep;
}

PeriodicFunction residual_G_tilde(double beta, const PeriodicFunction& theta) {
  if (!(beta > 0.0)) throw std::invalid_argument("residual_G_tilde: beta must be positive");
  const auto ct = hilbert(theta);
  const auto ep = exp(ct);
  const auto em = exp(-ct);
  const double ratio = em.mean() / ep.mean();
  const double s = 0.5 / beta;
  const auto ep_sin = ep * sin(theta);
  const auto ep_cos = ep * cos(theta);
  return derivative(ep_sin) - s * (ep_sin * hilbert(em.without_mean())) +
         (s * ratio) * (ep_sin * hilbert(ep.without_mean())) - s * (ep_cos * em) +
         (s * ratio) * (ep_cos * ep);
}

double wavenumber_k(double alpha, double beta, double g, double sigma) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("wavenumber_k: alpha must be positive (alpha <= 0 is the deep limit)");
  if (!(beta > 0.0) || !(g > 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("wavenumber_k: beta, g, sigma must be positive");
  return std::sqrt(g * beta / (alpha * sigma));
}

double wavenumber_k(const WaveParams& params) {
  return wavenumber_k(params.alpha, params.beta, params.g, params.sigma);
}

Conjugation scaled_conjugation(const WaveParams& params) {
  if (params.alpha <= 0.0) return Conjugation::deep();
  if (!params.depth.is_finite())
    throw std::invalid_argument("scaled_conjugation: alpha > 0 requires a finite depth");
  return Conjugation::strip(StripDepth(params.depth.h() * wavenumber_k(params)));
}

PeriodicFunction vorticity_bracket(const WaveParams& params, const PeriodicFunction& w) {
  const double gamma = params.depth.gamma();
  if (params.alpha <= 0.0 || gamma == 0.0) return PeriodicFunction::constant(1.0, w.n_grid());
  const double a = params.alpha;
  const double prefactor =
      gamma * std::pow(a * a * a * params.sigma / (params.g * params.g * params.g * params.beta), 0.25);
  const double inv_k = std::sqrt(a * params.sigma / (params.g * params.beta));
  const auto transform = scaled_conjugation(params);
  const auto wp = derivative(w);
  const auto w_wp = (w * wp).without_mean();
  const double mean_sq = mean_product(w, w);
  const auto inner = mean_sq / (2.0 * params.depth.h()) * inv_k + transform(w_wp) - w - w * transform(wp);
  return 1.0 + prefactor * inner;
}

namespace {

struct ScaledPieces {
  PeriodicFunction wp, wpp, one_plus, root, lead;
  double head = 1.0;
};

ScaledPieces scaled_pieces(const WaveParams& params, const PeriodicFunction& w) {
  params.validate();
  if (params.alpha > 0.0 && !params.depth.is_finite())
    throw std::invalid_argument("finite-depth operator needs a finite depth when alpha > 0");
  const double a = std::max(params.alpha, 0.0);
  const auto transform = scaled_conjugation(params);
  ScaledPieces p;
  p.wp = derivative(w);
  p.wpp = derivative(p.wp);
  p.one_plus = 1.0 + transform(p.wp);
  const auto metric = conformal_metric(w, transform);
  p.root = collocated_pow(metric, 0.5);
  const auto inv_root = collocated_pow(metric, -0.5);
  const auto bracket = vorticity_bracket(params, w);
  p.lead = (bracket * bracket) * inv_root;
  p.head = (p.lead.mean() + 2.0 * a * mean_product(w, p.root)) / p.root.mean();
  return p;
}

}  // namespace

double q_hat(const WaveParams& params, const PeriodicFunction& w) {
  if (params.alpha <= 0.0) return bernoulli_b(0.0, w);
  return scaled_pieces(params, w).head;
}

PeriodicFunction frak_A(const WaveParams& params, const PeriodicFunction& w) {
  const auto p = scaled_pieces(params, w);
  return bracket_term(p.lead, p.root, p.head, std::max(params.alpha, 0.0), w);
}

PeriodicFunction residual_fd(const WaveParams& params, const PeriodicFunction& w) {
  if (params.alpha <= 0.0) {
    WaveParams limit = params;
    limit.alpha = 0.0;
    return residual_inf(limit, w);
  }
  const auto p = scaled_pieces(params, w);
  const auto a = bracket_term(p.lead, p.root, p.head, params.alpha, w);
  return assemble_residual(p.wp, p.wpp, p.one_plus, a, scaled_conjugation(params), params.beta);
}

PeriodicFunction residual(const WaveParams& params, const PeriodicFunction& w) {
  return params.depth.is_finite() ? residual_fd(params, w) : residual_inf(params, w);
}

double head_constant(const WaveParams& params, const PeriodicFunction& w) {
  return params.depth.is_finite() ? q_hat(params, w) : bernoulli_b(params.alpha, w);
}

double mass_flux(double h, double lambda, double gamma) { return h * lambda + 0.5 * h * h * gamma; }

PhysicalParams physical_params(const WaveParams& params, double scaled_head) {
  params.validate();
  PhysicalParams out;
  out.k = wavenumber_k(params);
  out.lambda = std::sqrt(params.g / (out.k * params.alpha));
  out.c = out.lambda;
  if (params.depth.is_finite()) out.m = mass_flux(params.depth.h(), out.lambda, params.depth.gamma());
  out.Q = out.lambda * out.lambda * scaled_head;
  return out;
}

WaveParams scaled_params(double k, double lambda, double g, double sigma, DepthMode depth) {
  if (!(k > 0.0) || lambda == 0.0) throw std::invalid_argument("scaled_params: need k > 0 and lambda != 0");
  WaveParams p;
  p.g = g;
  p.sigma = sigma;
  p.depth = depth;
  p.alpha = g / (k * lambda * lambda);
  p.beta = k * sigma / (lambda * lambda);
  return p;
}

}  // namespace capwave
