#include "dualnest/rays.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace dualnest {

// ---------------------------------------------------------------------------
// Angle

Angle::Angle(BigInt num, BigInt den) {
    if (den <= 0) throw std::invalid_argument("angle denominator must be positive");
    num %= den;
    if (num < 0) num += den;
    BigInt g = gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Angle Angle::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Angle(BigInt(text), 1);
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Angle(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed angle '" + text + "'");
    }
}

double Angle::to_double() const {
    return static_cast<double>(Rational(num_, den_));
}

Angle Angle::doubled() const { return Angle(2 * num_, den_); }

std::pair<Angle, Angle> Angle::halved() const {
    Angle a(num_, 2 * den_);
    Angle b(num_ + den_, 2 * den_);
    return {a, b};
}

std::string Angle::str() const {
    return num_.str() + "/" + den_.str();
}

bool in_open_arc(const Angle& a, const Angle& b, const Angle& c) {
    if (a == c) return false;
    if (a < c) return a < b && b < c;
    return b > a || b < c;  // arc wraps through 0
}

AngleCycle alpha_cycle(long p, long q) {
    if (q < 2 || p <= 0 || p >= q || std::gcd(p, q) != 1) {
        throw NoCycle("rotation number must be p/q in lowest terms with 0 < p/q < 1, q >= 2");
    }
    const BigInt mod = (BigInt(1) << q) - 1;
    std::set<BigInt> seen;
    for (BigInt n = 1; n < mod; ++n) {
        if (seen.count(n)) continue;
        // Orbit of n under doubling mod (2^q - 1).
        std::vector<BigInt> orbit{n};
        BigInt m = (2 * n) % mod;
        while (m != n) {
            orbit.push_back(m);
            m = (2 * m) % mod;
        }
        for (const BigInt& v : orbit) seen.insert(v);
        if (orbit.size() != static_cast<size_t>(q)) continue;
        // Rotation number: doubling must send the k-th smallest element to
        // the (k+p)-th smallest.
        std::vector<BigInt> sorted = orbit;
        std::sort(sorted.begin(), sorted.end());
        auto index_of = [&](const BigInt& v) {
            return std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
        };
        bool ok = true;
        for (long k = 0; k < q && ok; ++k) {
            const BigInt image = (2 * sorted[static_cast<size_t>(k)]) % mod;
            ok = index_of(image) == (k + p) % q;
        }
        if (!ok) continue;
        AngleCycle cycle;
        cycle.p = p;
        cycle.q = q;
        for (const BigInt& v : sorted) cycle.angles.emplace_back(v, mod);
        return cycle;
    }
    throw NoCycle("no doubling cycle realizes the requested rotation number");
}

Angle double_angle(const Angle& a) { return a.doubled(); }

std::pair<Angle, Angle> preimage_angles(const Angle& a) { return a.halved(); }

// ---------------------------------------------------------------------------
// Ray tracing

namespace {

// Potential at which the Boettcher coordinate is identity to machine
// precision; 2^n t is steered into [kFar, 2*kFar).
constexpr double kFar = 250.0;

// Fractional part of 2^n * theta as a double, computed exactly.
double shifted_angle(const Angle& theta, int n) {
    Angle a = theta;
    for (int i = 0; i < n; ++i) a = a.doubled();
    return a.to_double();
}

struct NewtonTarget {
    int n = 0;       // iterate count
    Complex w;       // target for f^n(z)
};

NewtonTarget make_target(double t, const Angle& theta) {
    NewtonTarget tg;
    tg.n = 0;
    double s = t;
    while (s < kFar) {
        s *= 2.0;
        ++tg.n;
    }
    const double arg = 2.0 * M_PI * shifted_angle(theta, tg.n);
    tg.w = std::exp(s) * Complex(std::cos(arg), std::sin(arg));
    return tg;
}

bool newton_solve(const Parameter& param, const NewtonTarget& tg, Complex& z) {
    // f^n amplifies relative rounding by ~2^n, so the achievable residual
    // scales with the iterate count.
    const double rel_tol = std::max(1e-13, std::ldexp(4e-16, tg.n));
    for (int it = 0; it < 60; ++it) {
        Complex f = z;
        Complex d(1.0, 0.0);
        bool blown = false;
        for (int k = 0; k < tg.n; ++k) {
            d *= 2.0 * f;
            f = param.eval(f);
            if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
                blown = true;
                break;
            }
        }
        if (blown || d == Complex(0.0, 0.0)) return false;
        const Complex err = f - tg.w;
        if (std::abs(err) <= rel_tol * std::abs(tg.w)) return true;
        // When the orbit passes near a precritical point the condition number
        // of f^n dwarfs 2^n and the residual floor is set by |d|*eps*|z|
        // instead; z is then already correct to machine precision.
        if (std::abs(err) <= 1e-14 * std::abs(d) * std::abs(z)) return true;
        const Complex step = err / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
        z -= step;
        if (std::abs(step) <= 4e-15 * std::abs(z)) return true;
    }
    return false;
}

// Descend from potential t0 (sample z already valid there) to t1 < t0,
// recursively halving the step on Newton failure.
void descend(const Parameter& param, const Angle& theta, double t0, double t1,
             Complex& z, int depth) {
    const NewtonTarget tg = make_target(t1, theta);
    Complex trial = z;
    if (newton_solve(param, tg, trial)) {
        z = trial;
        return;
    }
    if (depth >= 24) {
        throw TraceDiverged("ray " + theta.str() + " lost near potential " +
                            std::to_string(t1));
    }
    const double mid = std::sqrt(t0 * t1);
    descend(param, theta, t0, mid, z, depth + 1);
    descend(param, theta, mid, t1, z, depth + 1);
}

// Seed a point at high potential where Boettcher is identity, then walk down.
Complex solve_at(const Parameter& param, const Angle& theta, double t,
                 int steps_per_halving) {
    const double arg = 2.0 * M_PI * theta.to_double();
    double cur = kFar;
    Complex z = std::exp(cur) * Complex(std::cos(arg), std::sin(arg));
    const double ratio = std::pow(0.5, 1.0 / steps_per_halving);
    while (cur > t) {
        double next = std::max(cur * ratio, t);
        descend(param, theta, cur, next, z, 0);
        cur = next;
    }
    return z;
}

}  // namespace

ExternalRay trace_ray(const Parameter& param, const Angle& angle,
                      double from_potential, double to_potential,
                      int steps_per_halving, double residual_tol) {
    if (!(from_potential > to_potential) || !(to_potential > 0.0)) {
        throw std::invalid_argument("require from_potential > to_potential > 0");
    }
    ExternalRay ray;
    ray.angle = angle;
    Complex z = solve_at(param, angle, from_potential, steps_per_halving);
    ray.samples.push_back(z);
    ray.potentials.push_back(from_potential);
    extend_ray(param, ray, to_potential, steps_per_halving, residual_tol);
    return ray;
}

void extend_ray(const Parameter& param, ExternalRay& ray, double to_potential,
                int steps_per_halving, double residual_tol) {
    const double from = ray.potentials.back();
    if (!(from > to_potential)) return;
    // Uniform steps in log potential; landing extrapolation relies on the
    // constant ratio.
    const int steps = std::max(1, static_cast<int>(std::ceil(
                          std::log2(from / to_potential) * steps_per_halving)));
    const double ratio = std::pow(to_potential / from, 1.0 / steps);
    double t = from;
    Complex z = ray.samples.back();
    for (int k = 1; k <= steps; ++k) {
        const double next = (k == steps) ? to_potential : from * std::pow(ratio, k);
        descend(param, ray.angle, t, next, z, 0);
        const double g = green_value(param, z);
        if (std::abs(g - next) > residual_tol) {
            throw TraceDiverged("green residual " + std::to_string(g - next) +
                                " on ray " + ray.angle.str());
        }
        ray.samples.push_back(z);
        ray.potentials.push_back(next);
        t = next;
    }
}

namespace {
std::vector<Complex> aitken(const std::vector<Complex>& s) {
    std::vector<Complex> out;
    for (size_t i = 2; i < s.size(); ++i) {
        const Complex d1 = s[i - 1] - s[i - 2];
        const Complex d2 = s[i] - s[i - 1];
        const Complex denom = d2 - d1;
        if (std::abs(denom) == 0.0) {
            out.push_back(s[i]);
        } else {
            out.push_back(s[i] - d2 * d2 / denom);
        }
    }
    return out;
}
}  // namespace

Complex landing_point(const ExternalRay& ray, const Parameter&, double tol) {
    const auto& s = ray.samples;
    if (s.size() < 8) throw NotLanded("ray too short to extrapolate");
    const size_t tail = std::min<size_t>(24, s.size());
    std::vector<Complex> seq(s.end() - tail, s.end());
    // One Aitken pass kills the dominant geometric mode. Iterating further
    // hurts: near a repelling periodic point the multiplier is complex, so
    // the ratio carries a log-periodic modulation that the second pass
    // amplifies instead of cancelling.
    seq = aitken(seq);
    const Complex est = seq.back();
    const size_t check = std::min<size_t>(4, seq.size());
    for (size_t i = seq.size() - check; i < seq.size(); ++i) {
        if (std::abs(seq[i] - est) > tol) {
            throw NotLanded("tail not Cauchy on ray " + ray.angle.str());
        }
    }
    return est;
}

Complex equipotential_point(const Parameter& param, double potential,
                            const Angle& angle, double residual_tol) {
    // Radial descent along the exact angle. Continuation from a nearby
    // equipotential point is NOT safe here: adjacent Newton targets for
    // f^n(z) = w jump by more than a full turn in argument, so a spatially
    // seeded solve can converge to a different f^n-preimage that has the
    // right Green level but the wrong external angle.
    Complex z = solve_at(param, angle, potential, 8);
    if (std::abs(green_value(param, z) - potential) > residual_tol) {
        throw TraceDiverged("equipotential point at angle " + angle.str());
    }
    return z;
}

Equipotential trace_equipotential(const Parameter& param, double level,
                                  int samples, double residual_tol) {
    if (!(level > 0.0)) throw std::invalid_argument("level must be positive");
    Equipotential eq;
    eq.level = level;
    eq.samples.reserve(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const Angle theta(k, samples);
        eq.samples.push_back(equipotential_point(param, level, theta, residual_tol));
    }
    return eq;
}

}  // namespace dualnest
