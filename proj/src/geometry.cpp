#include "dualnest/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dualnest {

BoundingBox bounding_box(const Polyline& poly, double pad) {
    BoundingBox bb;
    bb.xmin = bb.ymin = std::numeric_limits<double>::infinity();
    bb.xmax = bb.ymax = -std::numeric_limits<double>::infinity();
    for (const Complex& z : poly) {
        bb.xmin = std::min(bb.xmin, z.real());
        bb.xmax = std::max(bb.xmax, z.real());
        bb.ymin = std::min(bb.ymin, z.imag());
        bb.ymax = std::max(bb.ymax, z.imag());
    }
    bb.xmin -= pad;
    bb.ymin -= pad;
    bb.xmax += pad;
    bb.ymax += pad;
    return bb;
}

bool point_inside(const Polyline& poly, Complex z) {
    bool inside = false;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Complex& a = poly[i];
        const Complex& b = poly[j];
        if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
            const double x = a.real() + (z.imag() - a.imag()) /
                                            (b.imag() - a.imag()) *
                                            (b.real() - a.real());
            if (z.real() < x) inside = !inside;
        }
    }
    return inside;
}

namespace {
double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(z - a);
    double t = ((z.real() - a.real()) * ab.real() +
                (z.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(z - (a + t * ab));
}
}  // namespace

double distance_to_polyline(const Polyline& poly, Complex z) {
    double best = std::numeric_limits<double>::infinity();
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        best = std::min(best, point_segment_distance(z, poly[j], poly[i]));
    }
    return best;
}

double polyline_distance(const Polyline& a, const Polyline& b) {
    // Vertex-to-segment scan both ways; adequate for densely sampled curves.
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& z : a) best = std::min(best, distance_to_polyline(b, z));
    for (const Complex& z : b) best = std::min(best, distance_to_polyline(a, z));
    return best;
}

double signed_area(const Polyline& poly) {
    double acc = 0.0;
    const size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        acc += poly[j].real() * poly[i].imag() - poly[i].real() * poly[j].imag();
    }
    return 0.5 * acc;
}

}  // namespace dualnest
