#include "capwave/app/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "capwave/app/serialization.hpp"
#include "capwave/app/svg.hpp"
#include "capwave/continuation.hpp"
#include "capwave/crapper.hpp"
#include "capwave/geometry.hpp"
#include "capwave/linearization.hpp"

namespace capwave::app {

namespace {

struct Check {
  std::string name;
  double value;
  double tol;
  bool pass() const { return std::isfinite(value) && value < tol; }
};

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["tol"] = c.tol;
    e["pass"] = c.pass();
    arr.push_back(e);
  }
  return arr;
}

void emit(const std::string& path, const Json& j, std::ostream& out) {
  if (path.empty())
    out << j.dump(2) << "\n";
  else
    write_json(path, j);
}

}  // namespace

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  cfg.validate();
  const CrapperParam A(cfg.A);
  const double beta = beta_of(A);
  const auto w = crapper_wave(A, cfg.grid);
  WaveParams p;
  p.beta = beta;
  const auto F = residual_inf(p, w);
  const auto theta = crapper_theta(A, cfg.grid);

  std::vector<Check> checks{
      {"identity", verify_identity(A, cfg.grid), cfg.tol_identity},
      {"residual_inf", F.max_abs(), cfg.tol_residual},
      {"residual_mean", std::abs(F.mean()), 1e-11},
      {"bernoulli_b_minus_1", std::abs(bernoulli_b(0.0, w) - 1.0), cfg.tol_head},
      {"theta_residual_G", residual_G(beta, theta).max_abs(), cfg.tol_theta},
      {"theta_map", (theta_of(w) - theta).max_abs(), cfg.tol_theta},
  };
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass();

  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = "verify";
  j["A"] = cfg.A;
  j["beta_A"] = beta;
  j["n_grid"] = cfg.grid;
  j["recommended_grid"] = recommended_grid(cfg.A);
  j["flat_water"] = cfg.A == 0.0;
  j["checks"] = checks_json(checks);
  j["pass"] = ok;
  emit(cfg.report, j, out);
  if (!cfg.report.empty())
    for (const auto& c : checks)
      out << (c.pass() ? "[PASS] " : "[FAIL] ") << c.name << " = " << format_real(c.value) << " (tol "
          << format_real(c.tol) << ")\n";
  return ok ? kSuccess : kToleranceFailure;
}

namespace {

struct SpectrumEntry {
  double A = 0.0;
  KernelReport report;
  double fd_mismatch = std::nan("");
  double sin_similarity = std::nan("");
  bool agree = true;
};

SpectrumEntry spectrum_cell(double A, const SpectrumConfig& cfg) {
  SpectrumEntry e;
  e.A = A;
  e.report = recurrence_scan(A, cfg.M, cfg.sigma_tol);
  const bool svd_injective = e.report.sigma_min > cfg.sigma_tol;
  e.agree = svd_injective == e.report.verdict.injective;
  if (!e.report.kernel_vectors.empty()) {
    const auto& v = e.report.kernel_vectors.front();
    double norm = 0.0;
    for (double x : v) norm += x * x;
    e.sin_similarity = std::abs(v[0]) / std::sqrt(norm);
  }
  if (cfg.fd_check) {
    const double beta = beta_of(CrapperParam(A));
    const auto theta = crapper_theta(CrapperParam(A), 8 * cfg.M);
    const auto fd = jacobian_fd([beta](const PeriodicFunction& t) { return residual_G(beta, t); }, theta, cfg.M,
                                0.0, Basis::sine, Basis::cosine);
    const auto an = dG_matrix(A, cfg.M);
    e.fd_mismatch = (an.entries - fd.entries).cwiseAbs().maxCoeff() / an.entries.cwiseAbs().maxCoeff();
  }
  return e;
}

}  // namespace

int cmd_spectrum(const SpectrumConfig& cfg, std::ostream& out) {
  cfg.validate();
  std::vector<double> grid;
  if (cfg.include_zero) grid.push_back(0.0);
  for (double A : cfg.A_grid)
    if (!(cfg.include_zero && A == 0.0)) grid.push_back(A);

  std::vector<SpectrumEntry> entries(grid.size());
  std::atomic<size_t> next{0};
  std::mutex err_mutex;
  std::string first_error;
  auto worker = [&] {
    for (size_t i = next++; i < grid.size(); i = next++) {
      try {
        entries[i] = spectrum_cell(grid[i], cfg);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (first_error.empty()) first_error = ex.what();
      }
    }
  };
  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(grid.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (!first_error.empty()) throw std::runtime_error(first_error);

  bool ok = true;
  std::ostringstream csv;
  csv << "A,beta,sigma_min,sigma_max,recurrence_injective,svd_injective,ratio_limit,factorization_error,"
         "a2_coefficient,a1_coefficient,fd_mismatch,kernel_sin_similarity\n";
  Json arr = Json::array();
  for (const auto& e : entries) {
    const auto& r = e.report;
    const bool fd_ok = !cfg.fd_check || e.fd_mismatch <= cfg.fd_tol;
    ok = ok && fd_ok && e.agree;
    const bool svd_injective = r.sigma_min > cfg.sigma_tol;
    const double beta = beta_of(CrapperParam(e.A));
    const auto nan = std::nan("");
    const double ratio = r.recurrence ? r.recurrence->ratio_limit : nan;
    const double ferr = r.recurrence ? r.recurrence->factorization_error : nan;
    const double a2 = r.recurrence ? r.recurrence->a2_coefficient : nan;
    const double a1 = r.recurrence ? r.recurrence->a1_coefficient : nan;
    csv << format_real(e.A) << ',' << format_real(beta) << ',' << format_real(r.sigma_min) << ','
        << format_real(r.sigma_max) << ',' << (r.verdict.injective ? 1 : 0) << ',' << (svd_injective ? 1 : 0) << ','
        << format_real(ratio) << ',' << format_real(ferr) << ',' << format_real(a2) << ',' << format_real(a1) << ','
        << format_real(e.fd_mismatch) << ',' << format_real(e.sin_similarity) << '\n';
    Json j;
    j["A"] = e.A;
    j["beta_A"] = beta;
    j["sigma_min"] = r.sigma_min;
    j["sigma_max"] = r.sigma_max;
    j["injective"] = r.verdict.injective;
    j["svd_injective"] = svd_injective;
    j["verdict"] = r.verdict.description;
    j["kernel_dimension"] = r.kernel_vectors.size();
    if (std::isfinite(e.sin_similarity)) j["kernel_sin_similarity"] = e.sin_similarity;
    if (r.recurrence) {
      j["ratio_limit"] = ratio;
      j["factorization_error"] = ferr;
      j["a2_coefficient"] = a2;
      j["a1_coefficient"] = a1;
    }
    if (cfg.fd_check) j["fd_mismatch"] = e.fd_mismatch;
    arr.push_back(j);
    out << "A=" << format_real(e.A) << " sigma_min=" << format_real(r.sigma_min)
        << (r.verdict.injective ? " injective" : " singular");
    if (!r.verdict.injective && std::isfinite(e.sin_similarity))
      out << " (kernel ~ sin t, similarity " << format_real(e.sin_similarity) << ")";
    if (cfg.fd_check) out << " fd_mismatch=" << format_real(e.fd_mismatch) << (fd_ok ? "" : " EXCEEDS TOLERANCE");
    out << "\n";
  }
  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = "spectrum";
  j["M"] = cfg.M;
  j["sigma_tol"] = cfg.sigma_tol;
  j["fd_tol"] = cfg.fd_tol;
  j["entries"] = arr;
  j["pass"] = ok;
  if (!cfg.csv.empty()) write_text(cfg.csv, csv.str());
  if (!cfg.json.empty()) write_json(cfg.json, j);
  return ok ? kSuccess : kToleranceFailure;
}

int cmd_continue(const ContinueConfig& cfg, std::ostream& out) {
  cfg.validate();
  const CrapperParam A(cfg.A);
  const double beta_A = beta_of(A);
  const double beta_end = cfg.beta.value_or(beta_A);

  std::vector<ParamPoint> schedule;
  if (cfg.alpha_start > 0.0) schedule.push_back({0.0, beta_A});
  for (int i = 0; i <= cfg.steps; ++i) {
    const double s = static_cast<double>(i) / cfg.steps;
    schedule.push_back({cfg.alpha_start + s * (cfg.alpha_end - cfg.alpha_start), beta_A + s * (beta_end - beta_A)});
  }
  const DepthMode depth = cfg.h ? DepthMode::finite(*cfg.h, cfg.gamma) : DepthMode::infinite();

  ContinuationOptions opt;
  opt.newton.M = cfg.M;
  opt.newton.tol = cfg.tol;
  opt.newton.max_iter = cfg.max_iter;
  opt.n_grid = cfg.grid;
  opt.max_halvings = cfg.max_halvings;
  opt.g = cfg.g;
  opt.sigma = cfg.sigma;
  const Branch br = continue_branch(cfg.A, schedule, depth, opt);

  for (const auto& s : br.solutions)
    out << "alpha=" << format_real(s.params.alpha) << " beta=" << format_real(s.params.beta)
        << " iters=" << s.newton_iters << " residual=" << format_real(s.residual_norm)
        << " head=" << format_real(s.b_or_qhat) << " steepness=" << format_real(s.geometry.steepness)
        << (s.geometry.injective ? "" : " SELF-INTERSECTING") << (s.geometry.above_bed ? "" : " BELOW-BED") << "\n";
  out << "status: " << to_string(br.status) << (br.message.empty() ? "" : " (" + br.message + ")") << "\n";

  if (!cfg.json.empty()) write_json(cfg.json, branch_to_json(br, cfg.M));
  if (!cfg.csv.empty()) write_text(cfg.csv, branch_csv(br));
  if (!cfg.svg_dir.empty()) {
    std::filesystem::create_directories(cfg.svg_dir);
    for (size_t i = 0; i < br.solutions.size(); ++i) {
      const auto& s = br.solutions[i];
      const auto transform = s.params.depth.is_finite() ? scaled_conjugation(s.params) : Conjugation::deep();
      const auto curve = surface_profile(s.w.resampled(std::max(s.w.n_grid(), 1024)), s.geometry.k, transform);
      char name[32];
      std::snprintf(name, sizeof name, "profile_%03zu.svg", i);
      write_text((std::filesystem::path(cfg.svg_dir) / name).string(), profile_svg(curve, check_injective(curve)));
    }
  }
  return br.status == BranchStatus::completed ? kSuccess : kSolverFailure;
}

int cmd_profile(const ProfileConfig& cfg, std::ostream& out) {
  cfg.validate();
  WaveParams params;
  PeriodicFunction w;
  if (cfg.crapper) {
    const CrapperParam A(*cfg.crapper);
    params.beta = beta_of(A);
    w = crapper_wave(A, std::max(cfg.grid, recommended_grid(*cfg.crapper, 1e-16)));
  } else {
    const auto stored = load_solution_file(cfg.input, cfg.index);
    params = stored.params;
    w = stored.w();
  }
  const double k = params.alpha > 0.0 ? wavenumber_k(params) : 1.0;
  const auto transform = params.depth.is_finite() ? scaled_conjugation(params) : Conjugation::deep();
  const auto curve = surface_profile(w.resampled(std::max(w.n_grid(), cfg.grid)), k, transform);
  const auto rep = check_injective(curve);
  out << "points=" << curve.points.size() << " k=" << format_real(k) << " steepness=" << format_real(steepness(w))
      << " injective=" << (rep.injective ? "true" : "false") << " crossings=" << rep.crossings.size() << "\n";
  if (!cfg.svg.empty()) write_text(cfg.svg, profile_svg(curve, rep, cfg.repeats));
  if (!cfg.csv.empty()) write_text(cfg.csv, profile_csv(curve));
  return kSuccess;
}

int cmd_limit_check(const LimitCheckConfig& cfg, std::ostream& out) {
  cfg.validate();
  const CrapperParam A(cfg.A);
  const auto w = crapper_wave(A, cfg.grid);
  WaveParams base;
  base.beta = beta_of(A);
  base.g = cfg.g;
  base.sigma = cfg.sigma;
  base.depth = DepthMode::finite(cfg.h, cfg.gamma);
  const auto F0 = residual_inf(base, w);

  std::vector<double> alphas = cfg.alphas;
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  Json rows = Json::array();
  std::vector<double> diffs;
  for (double a : alphas) {
    WaveParams p = base;
    p.alpha = a;
    diffs.push_back((residual_fd(p, w) - F0).max_abs());
    Json r;
    r["alpha"] = a;
    r["difference"] = diffs.back();
    r["q_hat"] = q_hat(p, w);
    rows.push_back(r);
    out << "alpha=" << format_real(a) << " |F_fd - F_inf| = " << format_real(diffs.back()) << "\n";
  }
  bool decreasing = true;
  for (size_t i = 1; i < diffs.size(); ++i) decreasing = decreasing && diffs[i] < diffs[i - 1];
  double at_limit = 0.0;
  for (double a : {0.0, -1e-3, -0.1}) {
    WaveParams p = base;
    p.alpha = a;
    at_limit = std::max(at_limit, (residual_fd(p, w) - F0).max_abs());
  }
  const bool exact = at_limit == 0.0;
  out << "strictly decreasing: " << (decreasing ? "yes" : "no") << "; difference at alpha <= 0: "
      << format_real(at_limit) << "\n";

  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = "limit-check";
  j["A"] = cfg.A;
  j["gamma"] = cfg.gamma;
  j["h"] = cfg.h;
  j["n_grid"] = cfg.grid;
  j["rows"] = rows;
  j["strictly_decreasing"] = decreasing;
  j["difference_at_nonpositive_alpha"] = at_limit;
  j["pass"] = decreasing && exact;
  if (!cfg.report.empty()) write_json(cfg.report, j);
  return decreasing && exact ? kSuccess : kToleranceFailure;
}

namespace {

std::string json_to_flag_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + json_to_flag_value(e);
    return s;
  }
  throw ConfigError("config values must be numbers, strings, booleans or arrays");
}

std::string find_config_path(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argc) throw ConfigError("--config needs a path");
      return argv[i + 1];
    }
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

// Optional real bound through a NaN sentinel.
struct OptionalReal {
  double value = std::nan("");
  std::optional<double> get() const { return std::isnan(value) ? std::nullopt : std::optional<double>(value); }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady capillary-gravity waves: Crapper verification, linearisation and continuation", "capwave"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string config_path;

  VerifyConfig vc;
  auto* verify = app.add_subcommand("verify", "Check the Crapper family against the residual and its identities");
  verify->add_option("--A", vc.A, "Crapper parameter, |A| < 1");
  verify->add_option("--grid", vc.grid, "Collocation points");
  verify->add_option("--tol-residual", vc.tol_residual);
  verify->add_option("--tol-identity", vc.tol_identity);
  verify->add_option("--tol-head", vc.tol_head);
  verify->add_option("--tol-theta", vc.tol_theta);
  verify->add_option("--report", vc.report, "JSON report path (default: stdout)");

  SpectrumConfig sc;
  auto* spectrum = app.add_subcommand("spectrum", "Injectivity of the linearised operator over an A grid");
  spectrum->add_option("--A-grid", sc.A_grid, "Comma-separated A values")->delimiter(',');
  spectrum->add_flag("--include-zero", sc.include_zero, "Also scan A = 0");
  spectrum->add_option("--M", sc.M, "Truncation (modes)");
  spectrum->add_option("--sigma-tol", sc.sigma_tol);
  spectrum->add_option("--fd-tol", sc.fd_tol, "Allowed analytic vs finite-difference mismatch");
  bool no_fd = false;
  spectrum->add_flag("--no-fd-check", no_fd, "Skip the finite-difference cross-check");
  spectrum->add_option("--jobs", sc.jobs, "Worker threads over A values");
  spectrum->add_option("--csv", sc.csv);
  spectrum->add_option("--json", sc.json);

  ContinueConfig cc;
  OptionalReal beta, depth_h;
  auto* cont = app.add_subcommand("continue", "Continue a Crapper wave in (alpha, beta)");
  cont->add_option("--A", cc.A);
  cont->add_option("--alpha-start", cc.alpha_start);
  cont->add_option("--alpha-end", cc.alpha_end);
  cont->add_option("--steps", cc.steps);
  cont->add_option("--beta", beta.value, "Final beta (default beta_A)");
  cont->add_option("--gamma", cc.gamma, "Constant vorticity (finite depth)");
  cont->add_option("--h", depth_h.value, "Conformal mean depth; omit for infinite depth");
  cont->add_option("--M", cc.M, "Cosine modes solved for");
  cont->add_option("--grid", cc.grid, "Collocation points (default 4 M)");
  cont->add_option("--tol", cc.tol);
  cont->add_option("--max-iter", cc.max_iter);
  cont->add_option("--max-halvings", cc.max_halvings);
  cont->add_option("--g", cc.g);
  cont->add_option("--sigma", cc.sigma);
  cont->add_option("--json", cc.json, "Branch JSON output");
  cont->add_option("--csv", cc.csv, "Branch CSV summary");
  cont->add_option("--svg-dir", cc.svg_dir, "Directory for one SVG profile per solution");

  ProfileConfig pc;
  OptionalReal crapper;
  auto* profile = app.add_subcommand("profile", "Surface curve of a stored solution or a Crapper wave");
  profile->add_option("--input", pc.input, "Solution or branch JSON");
  profile->add_option("--crapper", crapper.value, "Use the Crapper wave with this A instead");
  profile->add_option("--grid", pc.grid, "Minimum number of curve points");
  profile->add_option("--index", pc.index, "Solution index in a branch file (-1 = last)");
  profile->add_option("--repeats", pc.repeats, "Periods drawn");
  profile->add_option("--svg", pc.svg);
  profile->add_option("--csv", pc.csv);

  LimitCheckConfig lc;
  auto* limit = app.add_subcommand("limit-check", "Finite-depth residual approaching the deep residual as alpha -> 0");
  limit->add_option("--A", lc.A);
  limit->add_option("--gamma", lc.gamma);
  limit->add_option("--h", lc.h);
  limit->add_option("--alphas", lc.alphas)->delimiter(',');
  limit->add_option("--grid", lc.grid);
  limit->add_option("--g", lc.g);
  limit->add_option("--sigma", lc.sigma);
  limit->add_option("--report", lc.report);

  for (auto* sub : {verify, spectrum, cont, profile, limit})
    sub->add_option("--config", config_path, "JSON file of option values (flags override)");

  try {
    const std::string path = find_config_path(argc, argv);
    if (!path.empty()) {
      CLI::App* sub = nullptr;
      for (int i = 1; i < argc && !sub; ++i)
        for (auto* s : {verify, spectrum, cont, profile, limit})
          if (s->get_name() == argv[i]) sub = s;
      if (!sub) throw ConfigError("--config needs a subcommand");
      const auto file = load_config_file(path);
      for (const auto& [key, value] : file.items()) {
        auto* opt = sub->get_option_no_throw("--" + key);
        if (!opt || key == "config") throw ConfigError("unknown config key '" + key + "' for " + sub->get_name());
        opt->default_val(json_to_flag_value(value));
      }
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  sc.fd_check = !no_fd;
  cc.beta = beta.get();
  cc.h = depth_h.get();
  pc.crapper = crapper.get();

  try {
    if (*verify) return cmd_verify(vc, out);
    if (*spectrum) return cmd_spectrum(sc, out);
    if (*cont) return cmd_continue(cc, out);
    if (*profile) return cmd_profile(pc, out);
    if (*limit) return cmd_limit_check(lc, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SolverFailure& e) {
    err << "solver failure (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kConfigError;
}

}  // namespace capwave::app
