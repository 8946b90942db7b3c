#include "capwave/linearization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "capwave/crapper.hpp"
#include "capwave/spectral.hpp"

namespace capwave {

const char* to_string(Basis b) { return b == Basis::cosine ? "cosine" : "sine"; }

double default_fd_step(const PeriodicFunction& base) { return 1e-6 * (1.0 + base.max_abs()); }

namespace {

PeriodicFunction basis_function(Basis b, int n, int n_grid) {
  std::vector<double> a(static_cast<size_t>(n), 0.0);
  a.back() = 1.0;
  return b == Basis::cosine ? PeriodicFunction::from_cosine_modes(a, n_grid)
                            : PeriodicFunction::from_sine_modes(a, n_grid);
}

std::vector<double> project(const PeriodicFunction& f, Basis b, int count) {
  return b == Basis::cosine ? f.cosine_modes(count) : f.sine_modes(count);
}

// Number of geometric terms kept so that |A|^K is below double rounding.
int series_length(double A) {
  const double a = std::abs(A);
  if (a < 1e-300) return 2;
  return static_cast<int>(std::ceil(std::log(1e-18) / std::log(a))) + 2;
}

}  // namespace

OperatorMatrix jacobian_fd(const FunctionMap& op, const PeriodicFunction& base, int M, double step,
                           Basis domain, Basis range, int range_modes) {
  if (M < 1) throw std::invalid_argument("jacobian_fd: M must be positive");
  if (2 * M >= base.n_grid()) throw std::invalid_argument("jacobian_fd: M must be below n_grid/2");
  const int rows = range_modes > 0 ? range_modes : M;
  const double h = step > 0.0 ? step : default_fd_step(base);
  OperatorMatrix out;
  out.entries.resize(rows, M);
  out.domain = domain;
  out.range = range;
  out.built_from = BuiltFrom::finite_difference;
  for (int n = 1; n <= M; ++n) {
    const auto v = basis_function(domain, n, base.n_grid());
    const auto plus = project(op(base + h * v), range, rows);
    const auto minus = project(op(base - h * v), range, rows);
    for (int r = 0; r < rows; ++r) out.entries(r, n - 1) = (plus[r] - minus[r]) / (2.0 * h);
  }
  return out;
}

std::vector<double> exp_hilbert_theta_coeffs(double A, int count, int sign) {
  const double beta = beta_of(CrapperParam(A));
  std::vector<double> c(static_cast<size_t>(count), 0.0);
  if (count == 0) return c;
  c[0] = 2.0 * beta - 1.0;
  // e^{+C theta} = -1 + 2 beta (1 + 2 sum (-A)^k cos kt); e^{-C theta} is the
  // same with A -> -A.
  const double r = sign > 0 ? -A : A;
  double p = 1.0;
  for (int k = 1; k < count; ++k) {
    p *= r;
    c[static_cast<size_t>(k)] = 4.0 * beta * p;
  }
  return c;
}

namespace {

// cos-coefficients 0..rows-1 of (sum_k s_k cos kt) * cos nt.
std::vector<double> times_cos(const std::vector<double>& s, int n, int rows) {
  std::vector<double> out(static_cast<size_t>(rows), 0.0);
  auto add = [&](int j, double v) {
    if (j < rows) out[static_cast<size_t>(j)] += v;
  };
  add(n, s[0]);
  for (int k = 1; k < static_cast<int>(s.size()); ++k) {
    add(k + n, 0.5 * s[static_cast<size_t>(k)]);
    add(std::abs(k - n), 0.5 * s[static_cast<size_t>(k)]);
  }
  return out;
}

struct DgPieces {
  std::vector<double> ep, sum;  // e^{C theta_A} and e^{-C theta_A} + e^{C theta_A}
  double q = 0.0;
};

DgPieces dg_pieces(double A, int M) {
  const int len = M + series_length(A) + 1;
  DgPieces p;
  p.ep = exp_hilbert_theta_coeffs(A, len, +1);
  const auto em = exp_hilbert_theta_coeffs(A, len, -1);
  p.sum.resize(p.ep.size());
  for (size_t k = 0; k < p.ep.size(); ++k) p.sum[k] = p.ep[k] + em[k];
  p.q = q_of(CrapperParam(A));
  return p;
}

}  // namespace

std::vector<double> dG_mean_constants(double A, int M) {
  const auto p = dg_pieces(A, M);
  std::vector<double> c(static_cast<size_t>(M));
  for (int n = 1; n <= M; ++n) {
    // Zero mean of n cos nt - (q/2)(e^- + e^+) cos nt + C e^+.
    c[static_cast<size_t>(n - 1)] = 0.5 * p.q * times_cos(p.sum, n, 1)[0] / p.ep[0];
  }
  return c;
}

OperatorMatrix dG_matrix(double A, int M) {
  if (M < 1) throw std::invalid_argument("dG_matrix: M must be positive");
  const auto p = dg_pieces(A, M);
  const auto consts = dG_mean_constants(A, M);
  OperatorMatrix out;
  out.entries = Eigen::MatrixXd::Zero(M, M);
  out.domain = Basis::sine;
  out.range = Basis::cosine;
  out.built_from = BuiltFrom::analytic;
  for (int n = 1; n <= M; ++n) {
    // dG(sin nt) = n cos nt - (q/2)(e^- + e^+) cos nt + C_n e^+, using C sin nt = -cos nt.
    const auto prod = times_cos(p.sum, n, M + 1);
    const double cn = consts[static_cast<size_t>(n - 1)];
    for (int j = 1; j <= M; ++j) {
      double v = -0.5 * p.q * prod[static_cast<size_t>(j)] + cn * p.ep[static_cast<size_t>(j)];
      if (j == n) v += n;
      out.entries(j - 1, n - 1) = v;
    }
  }
  return out;
}

Eigen::MatrixXd dG_cleared_system(double A, int M) {
  if (M < 3) throw std::invalid_argument("dG_cleared_system: M must be at least 3");
  const double A2 = A * A, A4 = A2 * A2;
  const double q = q_of(CrapperParam(A));
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(M + 1, M + 1);
  auto add = [&](int row, int col, double v) {
    if (row <= M) L(row, col) += v;
  };
  // (1 + A^2 - 2A cos t)^2 multiplies C_A.
  add(0, 0, 1.0 + 4.0 * A2 + A4);
  add(1, 0, -4.0 * A * (1.0 + A2));
  add(2, 0, 2.0 * A2);
  for (int n = 1; n <= M; ++n) {
    // (1 + A^4 - 2A^2 cos 2t) n cos nt
    add(n, n, (1.0 + A4) * n);
    add(n + 2, n, -A2 * n);
    add(std::abs(n - 2), n, -A2 * n);
    // -q((1 + A^2)^2 + 2A^2 + 2A^2 cos 2t) cos nt
    const double c0 = -q * (1.0 + 4.0 * A2 + A4);
    add(n, n, c0);
    add(n + 2, n, -A2 * q);
    add(std::abs(n - 2), n, -A2 * q);
  }
  return L;
}

std::pair<double, double> singular_range(const Eigen::MatrixXd& m) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return {0.0, 0.0};
  return {s(s.size() - 1), s(0)};
}

KernelReport smallest_singular(const OperatorMatrix& matrix, double tol) {
  KernelReport rep;
  rep.M = matrix.modes();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(matrix.entries, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  rep.sigma_max = s(0);
  rep.sigma_min = s(s.size() - 1);
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s(j) >= tol) continue;
    const Eigen::VectorXd v = svd.matrixV().col(j);
    rep.kernel_vectors.emplace_back(v.data(), v.data() + v.size());
  }
  rep.verdict.injective = rep.kernel_vectors.empty();
  std::ostringstream os;
  os << "sigma_min = " << rep.sigma_min << (rep.verdict.injective ? " (no kernel below " : " (kernel below ")
     << tol << ")";
  rep.verdict.description = os.str();
  return rep;
}

KernelReport recurrence_scan(double A, int M, double sigma_tol) {
  if (M < 8) throw std::invalid_argument("recurrence_scan: M must be at least 8");
  CrapperParam checked(A);
  (void)checked;
  KernelReport rep = smallest_singular(dG_matrix(A, M), sigma_tol);
  rep.A = A;
  rep.M = M;
  if (A == 0.0) {
    // dG[0] = diag(n - 1): sin t spans the kernel.
    rep.verdict.injective = false;
    std::vector<double> v(static_cast<size_t>(M), 0.0);
    v[0] = 1.0;
    rep.kernel_vectors = {v};
    rep.verdict.description = "A = 0: dG[0] sin t = 0, kernel spanned by sin t";
    return rep;
  }

  const auto L = dG_cleared_system(A, M);
  const double A2 = A * A, A4 = A2 * A2;
  const double q = q_of(CrapperParam(A));
  RecurrenceDetails d;
  d.ratio_limit = 1.0 / A2;
  double scale = 0.0;
  for (int k = 3; k + 2 <= M; ++k) {
    const double lower = L(k, k - 2), upper = L(k, k + 2), diag = L(k, k);
    d.k.push_back(k);
    d.ratios.push_back(lower / upper / A2);
    // Row k should equal -[A^2(k+2+q) a_{k+2} - (A^4(k+2+q) + (k-2+q)) a_k + A^2(k-2+q) a_{k-2}].
    const double e1 = std::abs(upper + A2 * (k + 2 + q));
    const double e2 = std::abs(lower + A2 * (k - 2 + q));
    const double e3 = std::abs(diag - (A4 * (k + 2 + q) + (k - 2 + q)));
    d.factorization_error = std::max({d.factorization_error, e1, e2, e3});
    scale = std::max(scale, std::abs(diag));
  }
  d.factorization_error /= std::max(scale, 1.0);

  // Once A_k = a_{k+2} - A^2 a_k vanishes for all k >= 1, a_4 = A^2 a_2 and
  // a_3 = A^2 a_1; rows 0..2 reduce to two scalar equations.
  const double c_from_a2 = -L(0, 2) / L(0, 0);
  d.a2_coefficient_raw = L(2, 2) + A2 * L(2, 4) + L(2, 0) * c_from_a2;
  d.a1_coefficient_raw = L(1, 1) + A2 * L(1, 3);
  d.a2_coefficient = (1.0 + A2) * d.a2_coefficient_raw;
  d.a1_coefficient = (1.0 + A2) * d.a1_coefficient_raw;

  const bool grows = !d.ratios.empty() && d.ratios.back() > 1.0;
  const bool factors = d.factorization_error < 1e-12;
  const bool nonzero = std::abs(d.a1_coefficient) > 1e-14 && std::abs(d.a2_coefficient) > 1e-14;
  rep.verdict.injective = grows && factors && nonzero;
  std::ostringstream os;
  os << "n_k -> 1/A^2 = " << d.ratio_limit << (grows ? " (> 1, A_k must vanish)" : " (no growth)")
     << "; factorisation error " << d.factorization_error << "; reduced coefficients a2: "
     << d.a2_coefficient << ", a1: " << d.a1_coefficient << "; sigma_min = " << rep.sigma_min;
  rep.verdict.description = os.str();
  rep.recurrence = d;
  return rep;
}

}  // namespace capwave
