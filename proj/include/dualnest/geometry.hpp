#pragma once

#include "dualnest/dynamics.hpp"

#include <vector>

namespace dualnest {

using Polyline = std::vector<Complex>;  // closed curves repeat no endpoint

struct BoundingBox {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
};

BoundingBox bounding_box(const Polyline& poly, double pad = 0.0);

/// Even-odd point-in-polygon test on the closed polyline.
bool point_inside(const Polyline& poly, Complex z);

/// Distance from z to the closed polyline (segments, wrapping).
double distance_to_polyline(const Polyline& poly, Complex z);

/// Minimum distance between two closed polylines.
double polyline_distance(const Polyline& a, const Polyline& b);

/// Signed area (positive when counterclockwise).
double signed_area(const Polyline& poly);

}  // namespace dualnest
