#include "capwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

#include "capwave/crapper.hpp"
#include "capwave/operators.hpp"

namespace capwave {

double SurfaceCurve::period() const { return 2.0 * std::numbers::pi / k; }

SurfacePoint SurfaceCurve::at(long j) const {
  const long n = static_cast<long>(points.size());
  long r = j % n;
  long shift = j / n;
  if (r < 0) {
    r += n;
    --shift;
  }
  SurfacePoint p = points[static_cast<size_t>(r)];
  p.X += static_cast<double>(shift) * period();
  return p;
}

SurfaceCurve surface_profile(const PeriodicFunction& w, double k, const Conjugation& transform) {
  if (!(k > 0.0)) throw std::invalid_argument("surface_profile: k must be positive");
  conformal_metric(w, transform);
  const auto cw = transform(w.without_mean());
  SurfaceCurve c;
  c.k = k;
  c.points.resize(static_cast<size_t>(w.n_grid()));
  for (int j = 0; j < w.n_grid(); ++j)
    c.points[static_cast<size_t>(j)] = {(w.grid_point(j) + cw[j]) / k, w[j] / k};
  return c;
}

namespace {

double orient(const SurfacePoint& a, const SurfacePoint& b, const SurfacePoint& c) {
  return (b.X - a.X) * (c.Y - a.Y) - (b.Y - a.Y) * (c.X - a.X);
}

// Proper crossing; touching within `eps` (relative to the squared segment
// scale) is not counted.
bool proper_crossing(const SurfacePoint& a, const SurfacePoint& b, const SurfacePoint& c,
                     const SurfacePoint& d, double eps, SurfacePoint& where) {
  const double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const double o3 = orient(c, d, a), o4 = orient(c, d, b);
  auto strict = [eps](double x, double y) { return (x > eps && y < -eps) || (x < -eps && y > eps); };
  if (!strict(o1, o2) || !strict(o3, o4)) return false;
  const double s = o1 / (o1 - o2);
  where = {c.X + s * (d.X - c.X), c.Y + s * (d.Y - c.Y)};
  return true;
}

}  // namespace

InjectivityReport check_injective(const SurfaceCurve& curve) {
  const long n = static_cast<long>(curve.points.size());
  if (n < 64) throw std::invalid_argument("check_injective: need at least 64 points");
  // At least half a period on each side, widened until the margin covers the
  // X extent of one period so overlapping lobes several periods apart meet.
  double xmin = curve.points[0].X, xmax = xmin;
  for (const auto& p : curve.points) {
    xmin = std::min(xmin, p.X);
    xmax = std::max(xmax, p.X);
  }
  const long reach = static_cast<long>(std::ceil((xmax - xmin) / curve.period()));
  const long margin = std::max(n / 2, reach * n);
  const long lo = -margin, hi = n + margin;  // segments lo..hi-1

  struct Seg {
    long index;
    SurfacePoint a, b;
    double xmin, xmax, ymin, ymax;
  };
  std::vector<Seg> segs;
  segs.reserve(static_cast<size_t>(hi - lo));
  double scale = 0.0;
  for (long j = lo; j < hi; ++j) {
    const auto a = curve.at(j), b = curve.at(j + 1);
    segs.push_back({j, a, b, std::min(a.X, b.X), std::max(a.X, b.X), std::min(a.Y, b.Y),
                    std::max(a.Y, b.Y)});
    scale = std::max(scale, std::hypot(b.X - a.X, b.Y - a.Y));
  }
  const double eps = 1e-12 * scale * scale;
  std::sort(segs.begin(), segs.end(), [](const Seg& s, const Seg& t) { return s.xmin < t.xmin; });

  InjectivityReport rep;
  std::set<std::pair<long, long>> seen;
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size() && segs[j].xmin <= segs[i].xmax; ++j) {
      const Seg& s = segs[i];
      const Seg& t = segs[j];
      if (std::abs(s.index - t.index) <= 1) continue;
      if (s.ymax < t.ymin || t.ymax < s.ymin) continue;
      SurfacePoint where;
      if (!proper_crossing(s.a, s.b, t.a, t.b, eps, where)) continue;
      long a = std::min(s.index, t.index), b = std::max(s.index, t.index);
      // Canonical representative: first segment in the central period.
      long shift = a >= 0 ? a / n : -((-a + n - 1) / n);
      a -= shift * n;
      b -= shift * n;
      if (!seen.insert({a, b}).second) continue;
      rep.crossings.push_back({a, b, where.X - static_cast<double>(shift) * curve.period(), where.Y});
    }
  }
  rep.injective = rep.crossings.empty();
  return rep;
}

bool check_above_bed(const PeriodicFunction& w, double k, double h) {
  if (!(k > 0.0)) throw std::invalid_argument("check_above_bed: k must be positive");
  if (!std::isfinite(h)) return true;
  return w.min() / k > -h;
}

double steepness(const PeriodicFunction& w, double k) {
  const double wavelength = 2.0 * std::numbers::pi / k;
  return (w.max() - w.min()) / k / wavelength;
}

double critical_self_intersection_A(double tol, int n_grid) {
  if (!(tol > 0.0)) throw std::invalid_argument("critical_self_intersection_A: tol must be positive");
  auto crosses = [n_grid](double A) {
    const auto w = crapper_wave(CrapperParam(A), n_grid);
    return !check_injective(surface_profile(w, 1.0, Conjugation::deep())).injective;
  };
  double lo = 0.05, hi = 0.95;
  if (crosses(lo) || !crosses(hi))
    throw std::runtime_error("critical_self_intersection_A: bracket [0.05, 0.95] does not straddle the threshold");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (crosses(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace capwave
