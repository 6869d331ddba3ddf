#include "dualnest/dynamics.hpp"

#include <cmath>

namespace dualnest {

Complex evaluate(const Parameter& param, Complex z) { return param.eval(z); }

FixedPoints fixed_points(const Parameter& param, double tol) {
    const Complex disc = 1.0 - 4.0 * param.c;
    if (std::abs(disc) < tol) {
        throw DegenerateFixedPoint("fixed points coincide at c = 1/4");
    }
    const Complex root = std::sqrt(disc);  // principal branch
    FixedPoints fp;
    fp.beta = 0.5 * (1.0 + root);
    fp.alpha = 0.5 * (1.0 - root);
    return fp;
}

double green_value(const Parameter& param, Complex z, int budget) {
    const double esc = param.escape_radius();
    // Phase 1: wait for provable escape.
    int k = 0;
    while (k < budget && std::abs(z) <= esc) {
        z = param.eval(z);
        ++k;
    }
    if (std::abs(z) <= esc) return 0.0;
    // Phase 2: push far out so log|z_k| dominates the Boettcher tail.
    while (k < budget && std::abs(z) < 1e100) {
        z = param.eval(z);
        ++k;
    }
    return std::ldexp(std::log(std::abs(z)), -k);
}

OrbitSample critical_orbit(const Parameter& param, int length) {
    OrbitSample orbit;
    orbit.start = Complex(0.0, 0.0);
    orbit.points.reserve(static_cast<size_t>(length));
    Complex z = orbit.start;
    for (int i = 0; i < length; ++i) {
        orbit.points.push_back(z);
        z = param.eval(z);
    }
    return orbit;
}

}  // namespace dualnest
