#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dualnest/rays.hpp"

#include <cmath>

using namespace dualnest;

TEST_CASE("angle arithmetic") {
    CHECK(double_angle(Angle(1, 7)) == Angle(2, 7));
    CHECK(double_angle(Angle(4, 7)) == Angle(1, 7));
    CHECK(double_angle(Angle(1, 2)) == Angle(0, 1));
    CHECK(preimage_angles(Angle(1, 7)) == std::make_pair(Angle(1, 14), Angle(4, 7)));
    CHECK(preimage_angles(Angle(0, 1)) == std::make_pair(Angle(0, 1), Angle(1, 2)));
    CHECK(preimage_angles(Angle(2, 7)) == std::make_pair(Angle(1, 7), Angle(9, 14)));
    CHECK(Angle::parse("3/7") == Angle(3, 7));
    CHECK_THROWS(Angle::parse("1/0"));
    CHECK(in_open_arc(Angle(6, 7), Angle(1, 14), Angle(1, 7)));
    CHECK(!in_open_arc(Angle(1, 7), Angle(6, 7), Angle(2, 7)));
}

TEST_CASE("alpha cycles") {
    const AngleCycle half = alpha_cycle(1, 2);
    REQUIRE(half.angles.size() == 2);
    CHECK(half.angles[0] == Angle(1, 3));
    CHECK(half.angles[1] == Angle(2, 3));

    const AngleCycle third = alpha_cycle(1, 3);
    REQUIRE(third.angles.size() == 3);
    CHECK(third.angles[0] == Angle(1, 7));
    CHECK(third.angles[1] == Angle(2, 7));
    CHECK(third.angles[2] == Angle(4, 7));

    const AngleCycle twothirds = alpha_cycle(2, 3);
    REQUIRE(twothirds.angles.size() == 3);
    CHECK(twothirds.angles[0] == Angle(3, 7));
    CHECK(twothirds.angles[1] == Angle(5, 7));
    CHECK(twothirds.angles[2] == Angle(6, 7));

    CHECK_THROWS_AS(alpha_cycle(2, 4), NoCycle);
    CHECK_THROWS_AS(alpha_cycle(0, 2), NoCycle);

    // Doubling permutes each cycle with a single orbit of length q.
    for (auto [p, q] : std::vector<std::pair<long, long>>{{1, 2}, {1, 3}, {2, 5}}) {
        const AngleCycle cyc = alpha_cycle(p, q);
        Angle a = cyc.angles[0];
        int period = 0;
        do {
            a = double_angle(a);
            ++period;
            CHECK(std::find(cyc.angles.begin(), cyc.angles.end(), a) != cyc.angles.end());
        } while (a != cyc.angles[0] && period <= q);
        CHECK(period == q);
    }
}

TEST_CASE("rays are radial for c = 0") {
    const Parameter p{Complex(0, 0)};
    const ExternalRay quarter = trace_ray(p, Angle(1, 4), 1.0, 0.01);
    for (size_t i = 0; i < quarter.samples.size(); ++i) {
        const Complex z = quarter.samples[i];
        CHECK(std::abs(z.real()) < 1e-9 * std::abs(z));
        CHECK(z.imag() > 0);
        CHECK(std::abs(std::log(std::abs(z)) - quarter.potentials[i]) < 1e-9);
    }
    const ExternalRay zero = trace_ray(p, Angle(0, 1), 1.0, 0.01);
    for (const Complex& z : zero.samples) {
        CHECK(std::abs(z.imag()) < 1e-9 * std::abs(z));
        CHECK(z.real() > 1.0);
    }
}

TEST_CASE("landing points on the unit circle for c = 0") {
    const Parameter p{Complex(0, 0)};
    const ExternalRay quarter = trace_ray(p, Angle(1, 4), 1.0, 1e-5);
    CHECK(std::abs(landing_point(quarter, p) - Complex(0, 1)) < 1e-4);
    const ExternalRay zero = trace_ray(p, Angle(0, 1), 1.0, 1e-5);
    CHECK(std::abs(landing_point(zero, p) - Complex(1, 0)) < 1e-4);
}

TEST_CASE("alpha cycle rays land at alpha for c = i") {
    const Parameter p{Complex(0, 1)};
    const Complex alpha = fixed_points(p).alpha;
    const Complex beta = fixed_points(p).beta;
    for (const Angle& a : alpha_cycle(1, 3).angles) {
        const ExternalRay ray = trace_ray(p, a, 1.0, 1e-7);
        const Complex land = landing_point(ray, p);
        CHECK(std::abs(land - alpha) < 1e-4);
        CHECK(std::abs(land - beta) > 1e-2);
    }
}

TEST_CASE("forward invariance of ray samples") {
    const Parameter p{Complex(0, 1)};
    const ExternalRay ray = trace_ray(p, Angle(1, 7), 1.0, 0.01, 8);
    const ExternalRay image = trace_ray(p, Angle(2, 7), 2.0, 0.02, 8);
    // Sample at potential t maps to the sample at potential 2t on 2*theta.
    for (size_t i = 0; i < ray.samples.size(); ++i) {
        const double t2 = 2.0 * ray.potentials[i];
        // find matching potential on the image ray
        for (size_t j = 0; j < image.samples.size(); ++j) {
            if (std::abs(image.potentials[j] - t2) < 1e-12 * t2) {
                CHECK(std::abs(p.eval(ray.samples[i]) - image.samples[j]) < 1e-6);
            }
        }
    }
}

TEST_CASE("equipotentials") {
    const Parameter zero{Complex(0, 0)};
    const Equipotential e2 = trace_equipotential(zero, std::log(2.0), 64);
    for (const Complex& z : e2.samples) CHECK(std::abs(std::abs(z) - 2.0) < 1e-9);
    const Equipotential e4 = trace_equipotential(zero, std::log(4.0), 64);
    for (const Complex& z : e4.samples) CHECK(std::abs(std::abs(z) - 4.0) < 1e-8);

    const Parameter pi{Complex(0, 1)};
    const Equipotential e = trace_equipotential(pi, 1.0, 128);
    for (const Complex& z : e.samples) CHECK(std::abs(green_value(pi, z) - 1.0) < 1e-9);
}

TEST_CASE("rays at distinct angles do not cross") {
    const Parameter p{Complex(0, 1)};
    const ExternalRay a = trace_ray(p, Angle(1, 7), 1.0, 1e-3);
    const ExternalRay b = trace_ray(p, Angle(2, 7), 1.0, 1e-3);
    // Proxy for segment disjointness at desk depth: pointwise separation.
    for (const Complex& za : a.samples) {
        double best = 1e9;
        for (const Complex& zb : b.samples) best = std::min(best, std::abs(za - zb));
        CHECK(best > 1e-5);
    }
}
