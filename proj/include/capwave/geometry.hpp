#pragma once

#include <vector>

#include "capwave/periodic_function.hpp"
#include "capwave/spectral.hpp"

namespace capwave {

struct SurfacePoint {
  double X = 0.0;
  double Y = 0.0;
};

/// One period of the free surface (X, Y)(t) = (t + C w(t), w(t)) / k on the
/// grid; the next period is the same curve shifted by 2 pi / k in X.
struct SurfaceCurve {
  std::vector<SurfacePoint> points;
  double k = 1.0;

  double period() const;
  // Point j for any integer j (periodic extension).
  SurfacePoint at(long j) const;
};

// Requires a nondegenerate metric for `transform`.
SurfaceCurve surface_profile(const PeriodicFunction& w, double k, const Conjugation& transform);

struct Crossing {
  long segment_a = 0;  // index into the periodic extension; segment j joins points j, j+1
  long segment_b = 0;
  double X = 0.0;
  double Y = 0.0;
};

struct InjectivityReport {
  bool injective = true;
  std::vector<Crossing> crossings;  // one representative per periodic class
};

/// Proper crossings between non-adjacent segments, swept over one period plus
/// half a period on each side. Needs at least 64 points.
InjectivityReport check_injective(const SurfaceCurve& curve);

// min over the curve of Y > -h, with Y = w/k.
bool check_above_bed(const PeriodicFunction& w, double k, double h);

// (max w - min w)/(2 pi), i.e. height over wavelength.
double steepness(const PeriodicFunction& w, double k = 1.0);

/// Smallest A in (0, 1) at which the Crapper profile stops being injective,
/// located by bisection to within `tol`.
double critical_self_intersection_A(double tol = 1e-6, int n_grid = 2048);

}  // namespace capwave
