#pragma once

#include "dualnest/region.hpp"

#include <cmath>

namespace dualnest::testing {

inline Polyline circle(Complex center, double radius, int samples = 720) {
    Polyline poly;
    poly.reserve(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double a = 2.0 * M_PI * k / samples;
        poly.push_back(center + radius * Complex(std::cos(a), std::sin(a)));
    }
    return poly;
}

inline Polyline square(Complex center, double half_side) {
    Polyline poly;
    const int per_side = 256;
    const double s = half_side;
    for (int k = 0; k < per_side; ++k) {
        const double t = 2.0 * s * k / per_side;
        poly.push_back(center + Complex(-s + t, -s));
    }
    for (int k = 0; k < per_side; ++k) {
        const double t = 2.0 * s * k / per_side;
        poly.push_back(center + Complex(s, -s + t));
    }
    for (int k = 0; k < per_side; ++k) {
        const double t = 2.0 * s * k / per_side;
        poly.push_back(center + Complex(s - t, s));
    }
    for (int k = 0; k < per_side; ++k) {
        const double t = 2.0 * s * k / per_side;
        poly.push_back(center + Complex(-s, s - t));
    }
    return poly;
}

inline AnnulusRegion round_annulus(double r, double R, Complex center = {0, 0}) {
    AnnulusRegion region;
    region.outer = circle(center, R);
    region.inner = circle(center, r);
    return region;
}

inline double round_modulus(double r, double R) {
    return std::log(R / r) / (2.0 * M_PI);
}

}  // namespace dualnest::testing
