#pragma once

#include <string>

#include "capwave/geometry.hpp"

namespace capwave::app {

// Polyline of `repeats` periods in a unit-square viewBox with 5% margins;
// crossings drawn as small circles. The aspect ratio of the curve is kept.
std::string profile_svg(const SurfaceCurve& curve, const InjectivityReport& crossings, int repeats = 1);

}  // namespace capwave::app
