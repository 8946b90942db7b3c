#include "capwave/app/config.hpp"

#include <cmath>
#include <fstream>

namespace capwave::app {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

void check_A(double A, const char* what) {
  require(std::isfinite(A) && std::abs(A) < 1.0, std::string(what) + ": |A| must be < 1");
}

void check_grid(int n, const char* what) {
  require(n >= 16 && n % 2 == 0, std::string(what) + ": grid must be an even integer >= 16");
}

}  // namespace

void VerifyConfig::validate() const {
  check_A(A, "verify");
  check_grid(grid, "verify");
  require(tol_residual > 0 && tol_identity > 0 && tol_head > 0 && tol_theta > 0,
          "verify: tolerances must be positive");
}

void SpectrumConfig::validate() const {
  require(!A_grid.empty() || include_zero, "spectrum: empty A grid");
  for (double A : A_grid) check_A(A, "spectrum");
  require(M >= 8, "spectrum: M must be at least 8");
  require(sigma_tol > 0 && fd_tol > 0, "spectrum: tolerances must be positive");
  require(jobs >= 1, "spectrum: jobs must be >= 1");
}

void ContinueConfig::validate() const {
  check_A(A, "continue");
  require(A != 0.0, "continue: A = 0 is a singular start (flat water)");
  require(steps >= 1, "continue: steps must be >= 1");
  require(std::isfinite(alpha_start) && std::isfinite(alpha_end), "continue: alpha bounds must be finite");
  if (beta) require(*beta > 0, "continue: beta must be positive");
  if (h) require(*h > 0 && std::isfinite(*h), "continue: h must be positive");
  require(h || gamma == 0.0, "continue: vorticity requires a finite depth --h");
  require(M >= 4, "continue: M must be at least 4");
  if (grid != 0) {
    check_grid(grid, "continue");
    require(2 * M < grid, "continue: M must be below grid/2");
  }
  require(tol > 0 && max_iter >= 1 && max_halvings >= 0, "continue: bad solver settings");
  require(g > 0 && sigma > 0, "continue: g and sigma must be positive");
}

void ProfileConfig::validate() const {
  require(!input.empty() || crapper.has_value(), "profile: need --input or --crapper");
  require(input.empty() || !crapper.has_value(), "profile: --input and --crapper are exclusive");
  if (crapper) check_A(*crapper, "profile");
  check_grid(grid, "profile");
  require(repeats >= 1 && repeats <= 16, "profile: repeats must be in 1..16");
}

void LimitCheckConfig::validate() const {
  check_A(A, "limit-check");
  require(h > 0 && std::isfinite(h), "limit-check: h must be positive");
  require(!alphas.empty(), "limit-check: need at least one alpha");
  for (double a : alphas) require(a > 0, "limit-check: alphas must be positive");
  check_grid(grid, "limit-check");
  require(g > 0 && sigma > 0, "limit-check: g and sigma must be positive");
}

nlohmann::ordered_json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file " + path + " must hold a JSON object");
  return j;
}

}  // namespace capwave::app
