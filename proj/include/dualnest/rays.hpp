#pragma once

#include "dualnest/angle.hpp"
#include "dualnest/dynamics.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dualnest {

struct ExternalRay {
    Angle angle;
    std::vector<Complex> samples;   // ordered by decreasing potential
    std::vector<double> potentials; // matching Green values
    std::optional<Complex> landing;
};

struct Equipotential {
    double level = 0.0;             // Green value (log r)
    std::vector<Complex> samples;   // closed polyline, sample k at angle k/n
};

struct TraceDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotLanded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Angle double_angle(const Angle& a);
std::pair<Angle, Angle> preimage_angles(const Angle& a);

/// Polyline of the external ray gamma(theta) for Green values descending
/// geometrically from `from_potential` to `to_potential`. Each sample is
/// Newton-refined until its Green residual is below `residual_tol`.
ExternalRay trace_ray(const Parameter& param, const Angle& angle,
                      double from_potential, double to_potential,
                      int steps_per_halving = 8, double residual_tol = 1e-9);

/// Continues an already-traced ray down to a lower potential.
void extend_ray(const Parameter& param, ExternalRay& ray, double to_potential,
                int steps_per_halving = 8, double residual_tol = 1e-9);

/// Geometric-tail extrapolation of the deepest samples. Throws NotLanded
/// when they do not form a Cauchy tail within `tol`.
Complex landing_point(const ExternalRay& ray, const Parameter& param,
                      double tol = 1e-4);

Equipotential trace_equipotential(const Parameter& param, double level,
                                  int samples, double residual_tol = 1e-9);

/// Single point at the given potential and (exact) angle, found by radial
/// descent along the ray (never by continuation from a nearby point).
Complex equipotential_point(const Parameter& param, double potential,
                            const Angle& angle, double residual_tol = 1e-9);

}  // namespace dualnest
