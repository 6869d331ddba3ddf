#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dualnest {

using Complex = std::complex<double>;

/// Rotation number p/q of the alpha fixed point, in lowest terms.
struct Limb {
    long p = 1;
    long q = 2;
};

/// The quadratic family f_c(z) = z^2 + c.
struct Parameter {
    Complex c;
    std::optional<Limb> limb;

    Complex eval(Complex z) const { return z * z + c; }

    /// Monotone escape radius: once |z| exceeds it, the orbit escapes.
    double escape_radius() const { return std::max(2.0, std::abs(c)) + 1.0; }
};

struct FixedPoints {
    Complex alpha;
    Complex beta;
};

struct OrbitSample {
    Complex start;
    std::vector<Complex> points;
};

struct DegenerateFixedPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Complex evaluate(const Parameter& param, Complex z);

/// Roots of z^2 - z + c = 0. beta takes the principal branch of
/// sqrt(1 - 4c); for parameters off the ray through c = 1/4 this is the
/// landing point of the angle-0 ray. Throws DegenerateFixedPoint at c = 1/4.
FixedPoints fixed_points(const Parameter& param, double tol = 1e-12);

/// Green's function G(z) = lim 2^{-k} log|f^k(z)|, truncated once
/// |z| > 1e100 or after `budget` iterations. Non-escape encodes as 0.
double green_value(const Parameter& param, Complex z, int budget = 256);

OrbitSample critical_orbit(const Parameter& param, int length);

}  // namespace dualnest
