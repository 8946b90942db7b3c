#include "capwave/app/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "capwave/app/config.hpp"

namespace capwave::app {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON has no inf/nan; encode them as null.
Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double real_or_nan(const Json& j) { return j.is_number() ? j.get<double>() : std::nan(""); }

}  // namespace

PeriodicFunction StoredSolution::w() const { return PeriodicFunction::from_cosine_modes(cosine_coeffs, n_grid); }

Json depth_to_json(const DepthMode& d) { return d.is_finite() ? Json("finite") : Json("infinite"); }

Json solution_to_json(const WaveSolution& s, int M) {
  Json j;
  j["format_version"] = kFormatVersion;
  Json params;
  params["alpha"] = s.params.alpha;
  params["beta"] = s.params.beta;
  params["gamma"] = s.params.depth.gamma();
  params["h"] = s.params.depth.is_finite() ? Json(s.params.depth.h()) : Json(nullptr);
  params["g"] = s.params.g;
  params["sigma"] = s.params.sigma;
  j["params"] = params;
  j["depth_mode"] = depth_to_json(s.params.depth);
  j["n_grid"] = s.w.n_grid();
  j["cosine_coeffs"] = s.w.cosine_modes(M);
  j["residual_norm"] = s.residual_norm;

  Json d;
  d["b_or_qhat"] = s.b_or_qhat;
  d["newton_iters"] = s.newton_iters;
  Json hist = Json::array();
  for (double r : s.residual_history) hist.push_back(real(r));
  d["residual_history"] = hist;
  d["jacobian_sigma_min"] = real(s.jacobian_sigma_min);
  d["near_singular"] = s.near_singular;
  d["k"] = s.geometry.k;
  d["steepness"] = s.geometry.steepness;
  d["injective"] = s.geometry.injective;
  d["crossings"] = s.geometry.crossings;
  d["above_bed"] = s.geometry.above_bed;
  if (s.params.alpha > 0.0) {
    const auto phys = physical_params(s.params, s.b_or_qhat);
    d["lambda"] = phys.lambda;
    d["c"] = phys.c;
    d["m"] = real(phys.m);
    d["Q"] = real(phys.Q);
  }
  j["diagnostics"] = d;
  return j;
}

Json branch_to_json(const Branch& b, int M) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["start_A"] = b.start_A;
  j["depth_mode"] = depth_to_json(b.depth);
  j["h"] = b.depth.is_finite() ? Json(b.depth.h()) : Json(nullptr);
  j["gamma"] = b.depth.gamma();
  j["status"] = to_string(b.status);
  j["message"] = b.message;
  Json steps = Json::array();
  for (const auto& s : b.step_history) {
    Json e;
    e["alpha"] = s.alpha;
    e["beta"] = s.beta;
    e["step"] = s.step;
    e["accepted"] = s.accepted;
    e["newton_iters"] = s.newton_iters;
    e["note"] = s.note;
    steps.push_back(e);
  }
  j["step_history"] = steps;
  Json sols = Json::array();
  for (const auto& s : b.solutions) sols.push_back(solution_to_json(s, M));
  j["solutions"] = sols;
  return j;
}

StoredSolution solution_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ConfigError("solution: not a JSON object");
    if (j.at("format_version").get<int>() != kFormatVersion) throw ConfigError("solution: unsupported format_version");
    StoredSolution s;
    const auto& p = j.at("params");
    s.params.alpha = p.at("alpha").get<double>();
    s.params.beta = p.at("beta").get<double>();
    s.params.g = p.at("g").get<double>();
    s.params.sigma = p.at("sigma").get<double>();
    const std::string mode = j.at("depth_mode").get<std::string>();
    if (mode == "finite") {
      s.params.depth = DepthMode::finite(p.at("h").get<double>(), p.at("gamma").get<double>());
    } else if (mode != "infinite") {
      throw ConfigError("solution: unknown depth_mode '" + mode + "'");
    }
    s.n_grid = j.at("n_grid").get<int>();
    s.cosine_coeffs = j.at("cosine_coeffs").get<std::vector<double>>();
    if (s.n_grid < 4 || s.n_grid % 2 || 2 * static_cast<int>(s.cosine_coeffs.size()) >= s.n_grid)
      throw ConfigError("solution: inconsistent n_grid and coefficient count");
    s.residual_norm = real_or_nan(j.at("residual_norm"));
    if (j.contains("diagnostics")) s.diagnostics = j.at("diagnostics");
    s.params.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("solution: malformed field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solution: ") + e.what());
  }
}

StoredSolution load_solution_file(const std::string& path, int index) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + " is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("solutions")) {
    const auto& sols = j.at("solutions");
    if (!sols.is_array() || sols.empty()) throw ConfigError(path + ": branch holds no solutions");
    const long n = static_cast<long>(sols.size());
    const long i = index < 0 ? n + index : index;
    if (i < 0 || i >= n) throw ConfigError(path + ": solution index out of range");
    return solution_from_json(sols.at(static_cast<size_t>(i)));
  }
  return solution_from_json(j);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string branch_csv(const Branch& b) {
  std::ostringstream os;
  os << "A_start,alpha,beta,gamma,h,residual_inf_norm,b_or_qhat,steepness,injective,above_bed,newton_iters\n";
  for (const auto& s : b.solutions) {
    os << format_real(b.start_A) << ',' << format_real(s.params.alpha) << ',' << format_real(s.params.beta) << ','
       << format_real(s.params.depth.gamma()) << ',' << format_real(s.params.depth.h()) << ','
       << format_real(s.residual_norm) << ',' << format_real(s.b_or_qhat) << ',' << format_real(s.geometry.steepness)
       << ',' << (s.geometry.injective ? 1 : 0) << ',' << (s.geometry.above_bed ? 1 : 0) << ',' << s.newton_iters
       << '\n';
  }
  return os.str();
}

std::string profile_csv(const SurfaceCurve& c) {
  std::ostringstream os;
  os << "X,Y\n";
  for (const auto& p : c.points) os << format_real(p.X) << ',' << format_real(p.Y) << '\n';
  return os.str();
}

SurfaceCurve read_profile_csv(const std::string& path, double k) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  SurfaceCurve c;
  c.k = k;
  std::string line;
  std::getline(in, line);
  if (line != "X,Y") throw ConfigError(path + ": missing X,Y header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(path + ": malformed row '" + line + "'");
    try {
      c.points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    } catch (const std::exception&) {
      throw ConfigError(path + ": malformed row '" + line + "'");
    }
  }
  return c;
}

}  // namespace capwave::app
