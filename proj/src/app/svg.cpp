#include "capwave/app/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

namespace capwave::app {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string profile_svg(const SurfaceCurve& curve, const InjectivityReport& crossings, int repeats) {
  const long n = static_cast<long>(curve.points.size());
  std::vector<SurfacePoint> pts;
  for (long j = 0; j <= n * repeats; ++j) pts.push_back(curve.at(j));

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.X);
    xmax = std::max(xmax, p.X);
    ymin = std::min(ymin, p.Y);
    ymax = std::max(ymax, p.Y);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  const double scale = 0.9 / span;
  const double ox = 0.05 + 0.5 * (0.9 - scale * (xmax - xmin));
  const double oy = 0.05 + 0.5 * (0.9 - scale * (ymax - ymin));
  auto sx = [&](double x) { return ox + scale * (x - xmin); };
  auto sy = [&](double y) { return 1.0 - (oy + scale * (y - ymin)); };  // SVG y points down

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"800\" height=\"800\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\"/>\n"
     << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.002\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << num(sx(pts[i].X)) << ',' << num(sy(pts[i].Y));
  os << "\"/>\n";
  for (int r = 0; r < repeats; ++r)
    for (const auto& c : crossings.crossings) {
      const double x = c.X + r * curve.period();
      if (x < xmin || x > xmax) continue;
      os << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(c.Y))
         << "\" r=\"0.008\" fill=\"none\" stroke=\"red\" stroke-width=\"0.002\"/>\n";
    }
  os << "</svg>\n";
  return os.str();
}

}  // namespace capwave::app
