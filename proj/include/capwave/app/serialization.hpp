#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "capwave/continuation.hpp"
#include "capwave/geometry.hpp"

namespace capwave::app {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// 17 significant digits (round-trips exactly); identical inputs give identical text.
std::string format_real(double v);

/// A solution as stored on disk: only the cosine coefficients of w are kept.
struct StoredSolution {
  WaveParams params;
  int n_grid = 0;
  std::vector<double> cosine_coeffs;  // a_1 .. a_M
  double residual_norm = 0.0;
  Json diagnostics = Json::object();

  PeriodicFunction w() const;
};

Json depth_to_json(const DepthMode& d);
Json solution_to_json(const WaveSolution& s, int M);
Json branch_to_json(const Branch& b, int M);

// Throws ConfigError on malformed input.
StoredSolution solution_from_json(const Json& j);
// Accepts a solution file or a branch file (index -1 selects the last solution).
StoredSolution load_solution_file(const std::string& path, int index = -1);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);

// Fixed columns: A_start, alpha, beta, gamma, h, residual_inf_norm, b_or_qhat,
// steepness, injective, above_bed, newton_iters.
std::string branch_csv(const Branch& b);

// "X,Y" rows with 17 significant digits.
std::string profile_csv(const SurfaceCurve& c);
SurfaceCurve read_profile_csv(const std::string& path, double k);

}  // namespace capwave::app
