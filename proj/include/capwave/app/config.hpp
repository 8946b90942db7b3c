#pragma once

#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace capwave::app {

// Bad flags, bad values or unreadable input files. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kToleranceFailure = 2, kSolverFailure = 3 };

struct VerifyConfig {
  double A = 0.5;
  int grid = 512;
  double tol_residual = 1e-9;
  double tol_identity = 1e-12;
  double tol_head = 1e-10;
  double tol_theta = 1e-10;
  std::string report;  // JSON path; empty prints to stdout

  void validate() const;
};

struct SpectrumConfig {
  std::vector<double> A_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  bool include_zero = false;
  int M = 64;
  double sigma_tol = 1e-6;
  double fd_tol = 1e-4;
  bool fd_check = true;
  int jobs = 1;
  std::string csv;
  std::string json;

  void validate() const;
};

// g = 9.81 and sigma = 0.074 are conventional SI values for water.
struct ContinueConfig {
  double A = 0.3;
  double alpha_start = 0.0;
  double alpha_end = 0.05;
  int steps = 10;
  std::optional<double> beta;  // defaults to beta_A
  double gamma = 0.0;
  std::optional<double> h;     // absent: infinite depth
  int M = 128;
  int grid = 0;                // 0: 4 M
  double tol = 1e-11;
  int max_iter = 25;
  int max_halvings = 6;
  double g = 9.81;
  double sigma = 0.074;
  std::string json;
  std::string csv;
  std::string svg_dir;

  void validate() const;
};

struct ProfileConfig {
  std::string input;
  std::optional<double> crapper;
  int grid = 1024;
  int index = -1;  // solution index within a branch file; -1 = last
  int repeats = 1;
  std::string svg;
  std::string csv;

  void validate() const;
};

struct LimitCheckConfig {
  double A = 0.5;
  double gamma = 1.0;
  double h = 2.0;
  std::vector<double> alphas{1e-2, 1e-3, 1e-4};
  int grid = 512;
  double g = 9.81;
  double sigma = 0.074;
  std::string report;

  void validate() const;
};

// Reads a flat JSON object of option values from `path`.
nlohmann::ordered_json load_config_file(const std::string& path);

}  // namespace capwave::app
